from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np
from bfs1d.bench.config import FILE_FAMILY
from bfs1d.bench.errors import BenchCorrectnessError, BenchIOError, BenchUsageError
from bfs1d.bench.plan import BenchPlan
from bfs1d.bench.records import BenchRecord, write_records
from bfs1d.core.bfs import BfsConfig, bfs_distributed, bfs_serial
from bfs1d.core.errors import GraphError, GraphFormatError, InvalidParameterError
from bfs1d.core.generators import generate
from bfs1d.core.graph import Graph, build_graph
from bfs1d.core.io import read_edge_list
from bfs1d.core.partition import PartitionMap
from bfs1d.transport import WorldConfig
from loguru import logger


@dataclass
class _Instance:
    """A graph of the plan together with its (optional) serial oracle levels."""

    family: str
    graph: Graph
    oracle: np.ndarray | None


def _load_graph(plan: BenchPlan) -> Graph:
    try:
        return build_graph(read_edge_list(plan.graph_path))
    except (OSError, GraphFormatError) as e:
        raise BenchIOError(f"Cannot load graph '{plan.graph_path}': {e}") from None
    except GraphError as e:
        raise BenchIOError(f"Invalid graph in '{plan.graph_path}': {e}") from None


def _generate_graph(plan: BenchPlan, n: int) -> Graph:
    try:
        return build_graph(generate(plan.spec_for(n)))
    except InvalidParameterError as e:
        raise BenchUsageError(str(e)) from None


def _instance_loader(plan: BenchPlan):
    @cache
    def load(n: int | None) -> _Instance:
        if n is None:
            graph, family = _load_graph(plan), FILE_FAMILY
        else:
            graph, family = _generate_graph(plan, n), plan.graph.family.value

        if plan.source >= graph.vertex_count:
            raise BenchUsageError(
                f"Source {plan.source} out of range for {graph.vertex_count} vertices"
            )

        oracle = None
        if graph.vertex_count <= plan.oracle_limit:
            oracle = bfs_serial(graph, plan.source)
        else:
            logger.warning(
                f"Skipping oracle verification: n={graph.vertex_count} exceeds "
                f"the oracle limit {plan.oracle_limit}"
            )
        return _Instance(family, graph, oracle)

    return load


def _verify(instance: _Instance, levels: np.ndarray, context: str) -> None:
    if instance.oracle is None or np.array_equal(levels, instance.oracle):
        return
    mismatch = int(np.flatnonzero(levels != instance.oracle)[0])
    raise BenchCorrectnessError(
        f"{context}: level of vertex {mismatch} is {levels[mismatch]}, "
        f"serial BFS says {instance.oracle[mismatch]}"
    )


def run_plan(plan: BenchPlan) -> list[BenchRecord]:
    """Runs every (rank count, strategy, frontier mode, repetition) of the plan.

    Every run is checked against the serial oracle while n stays within the
    oracle limit; a mismatch aborts the whole plan. The CSV is written if the
    plan names an output path.
    """
    load = _instance_loader(plan)
    records: list[BenchRecord] = []

    for p in plan.ranks:
        instance = load(plan.vertex_count(p))
        g = instance.graph
        pmap = PartitionMap(n=g.vertex_count, p=p)
        world_kwargs = {"p": p, "backend": plan.backend}
        if plan.timeout_s is not None:
            world_kwargs["timeout_s"] = plan.timeout_s
        world = WorldConfig(**world_kwargs)

        for strategy, mode in plan.variants():
            cfg = BfsConfig(
                source=plan.source,
                strategy=strategy,
                frontier_mode=mode,
                merge_transport=plan.merge_transport,
                p=p,
            )
            for repetition in range(plan.repetitions):
                levels, metrics = bfs_distributed(g, pmap, cfg, world)
                _verify(
                    instance,
                    levels,
                    f"p={p} {strategy.value}/{mode.value} repetition {repetition}",
                )
                records.append(
                    BenchRecord(
                        mode=plan.mode,
                        family=instance.family,
                        n=g.vertex_count,
                        edges=g.edge_count,
                        p=p,
                        strategy=strategy,
                        frontier_mode=mode,
                        backend=plan.backend,
                        repetition=repetition,
                        levels_traversed=metrics.levels_traversed,
                        total_wire_bytes=metrics.total_wire_bytes,
                        total_messages=metrics.total_messages,
                        aggregation_copy_bytes=metrics.aggregation_copy_bytes,
                        shortcircuit_hits=metrics.shortcircuit_hits,
                        compute_ns=metrics.compute_ns,
                        comm_ns=metrics.comm_ns,
                        total_ns=metrics.total_ns,
                    )
                )

    if plan.output is not None:
        write_records(records, plan.output)

    logger.success(f"Plan completed: {len(records)} records")
    return records
