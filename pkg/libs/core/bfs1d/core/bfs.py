"""Level-synchronous BFS over a 1-D block partition.

Every superstep runs on every rank:
  1. computation: expand the rank's frontier share (FS) and route each neighbor
     to the buffer of its owner; the optimized strategy updates neighbors it
     owns on the spot instead,
  2. communication: aggregate-then-exchange (baseline) or direct sends of each
     buffer (optimized),
  3. apply: the owner sets the level of every unvisited received vertex and
     appends it to its next frontier (NS),
  4. frontier formation: merge NS at rank 0 and broadcast (master_merge) or
     keep NS locally (distributed),
  5. termination: stop once the global NS is empty.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from bfs1d.core.config import (
    LEVEL_DTYPE,
    UNVISITED,
    VERTEX_DTYPE,
    FrontierMode,
    MergeTransport,
    Strategy,
)
from bfs1d.core.errors import CorrectnessViolationError, InvalidParameterError
from bfs1d.core.graph import Graph, check_vertex
from bfs1d.core.metrics import LevelRecord, RunMetrics
from bfs1d.core.partition import PartitionMap
from bfs1d.transport import Endpoint, VertexMessage, WorldConfig, spawn_world
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

MASTER_RANK = 0

_EMPTY = np.zeros(0, dtype=VERTEX_DTYPE)


class BfsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: int = Field(ge=0, description="Global id of the BFS root.")
    strategy: Strategy = Strategy.OPTIMIZED
    frontier_mode: FrontierMode = FrontierMode.MASTER_MERGE
    merge_transport: MergeTransport = Field(
        default=MergeTransport.COLLECTIVE,
        description="How master_merge moves frontiers (ignored when distributed).",
    )
    p: int | None = Field(default=None, ge=1, description="Rank count, if pinned.")


class BfsResult(NamedTuple):
    levels: np.ndarray
    metrics: RunMetrics


@dataclass
class LevelState:
    """Rank-local BFS state: levels of the owned block plus FS and NS shares."""

    rank: int
    start: int
    levels: np.ndarray
    fs: np.ndarray
    ns: np.ndarray
    current_level: int = 0

    @classmethod
    def initial(cls, rank: int, pmap: PartitionMap, source: int) -> LevelState:
        start, end = pmap.local_range(rank)
        levels = np.full(end - start, UNVISITED, dtype=LEVEL_DTYPE)
        fs = _EMPTY
        if start <= source < end:
            levels[source - start] = 0
            fs = np.array([source], dtype=VERTEX_DTYPE)
        return cls(rank=rank, start=start, levels=levels, fs=fs, ns=_EMPTY)

    @property
    def end(self) -> int:
        return self.start + len(self.levels)

    def owns(self, vertices: np.ndarray) -> bool:
        return bool(np.all((vertices >= self.start) & (vertices < self.end)))

    def discover(self, vertices: np.ndarray) -> np.ndarray:
        """Owner-side check: sets the next level of every unvisited vertex.

        Duplicates and already visited vertices are discarded, so a level is
        written at most once. Returns the newly discovered vertices in
        first-seen order.
        """
        if not len(vertices):
            return _EMPTY
        if not self.owns(vertices):
            raise CorrectnessViolationError(
                f"Rank {self.rank}: asked to discover vertices outside "
                f"[{self.start}, {self.end}) at level {self.current_level + 1}"
            )

        local = vertices - self.start
        local = local[self.levels[local] == UNVISITED]
        if not len(local):
            return _EMPTY

        unique, first_seen = np.unique(local, return_index=True)
        fresh = unique[np.argsort(first_seen)]

        self.levels[fresh] = self.current_level + 1

        return fresh + self.start


def bfs_serial(g: Graph, source: int) -> np.ndarray:
    """Reference BFS: shortest unweighted distance from `source`, UNVISITED if unreachable."""
    source = check_vertex(source, g.vertex_count)

    levels = np.full(g.vertex_count, UNVISITED, dtype=LEVEL_DTYPE)
    levels[source] = 0
    frontier = np.array([source], dtype=VERTEX_DTYPE)
    level = 0

    while len(frontier):
        nbrs = g.expand(frontier)
        nbrs = np.unique(nbrs[levels[nbrs] == UNVISITED])
        levels[nbrs] = level + 1
        frontier = nbrs
        level += 1

    return levels


def validate_levels(g: Graph, levels: np.ndarray, source: int) -> None:
    """Checks that `levels` is a valid BFS level assignment rooted at `source`.

    Raises `CorrectnessViolationError` on the first violated property.
    """
    if len(levels) != g.vertex_count:
        raise CorrectnessViolationError(
            f"Expected {g.vertex_count} levels, got {len(levels)}"
        )
    if levels[source] != 0:
        raise CorrectnessViolationError(f"Source {source} has level {levels[source]}")

    src, dst = g.sources(), g.neighbors
    visited = levels != UNVISITED

    mixed = np.flatnonzero(visited[src] != visited[dst])
    if mixed.size:
        u, v = int(src[mixed[0]]), int(dst[mixed[0]])
        raise CorrectnessViolationError(f"Edge ({u}, {v}) joins visited and unvisited")

    both = visited[src] & visited[dst]
    lu = levels[src[both]].astype(np.int64)
    lv = levels[dst[both]].astype(np.int64)
    far = np.flatnonzero(np.abs(lu - lv) > 1)
    if far.size:
        u, v = int(src[both][far[0]]), int(dst[both][far[0]])
        raise CorrectnessViolationError(
            f"Edge ({u}, {v}) spans levels {levels[u]} and {levels[v]}"
        )

    has_parent = np.zeros(g.vertex_count, dtype=bool)
    parent_edge = lv + 1 == lu
    has_parent[src[both][parent_edge]] = True
    orphans = np.flatnonzero(visited & ~has_parent)
    orphans = orphans[orphans != source]
    if orphans.size:
        raise CorrectnessViolationError(
            f"Vertex {int(orphans[0])} has no neighbor one level closer to the source"
        )


def _route(
    vertices: np.ndarray, owners: np.ndarray, size: int
) -> list[np.ndarray]:
    """Splits `vertices` into per-owner buffers, keeping their relative order."""
    if not len(vertices):
        return [_EMPTY] * size
    order = np.argsort(owners, kind="stable")
    bounds = np.searchsorted(owners[order], np.arange(size + 1))
    routed = vertices[order]
    return [routed[bounds[r] : bounds[r + 1]] for r in range(size)]


def _communicate(
    endpoint: Endpoint, outgoing: list[VertexMessage], strategy: Strategy
) -> list[VertexMessage]:
    if strategy == Strategy.BASELINE:
        return endpoint.exchange_all(outgoing)

    # Every peer gets a message, header-only if empty, so receive counts are fixed.
    for to in range(endpoint.size):
        if to != endpoint.rank:
            endpoint.send(to, outgoing[to])
    return [
        endpoint.recv(source) if source != endpoint.rank else outgoing[source]
        for source in range(endpoint.size)
    ]


def _merge_at_master(
    endpoint: Endpoint, state: LevelState, merge_transport: MergeTransport
) -> np.ndarray:
    """Forms the next global frontier at the master and hands each rank its share."""
    level = state.current_level + 1
    contribution = VertexMessage(level, state.ns)

    if merge_transport == MergeTransport.COLLECTIVE:
        merged = endpoint.gather_to_root(contribution, MASTER_RANK)
        frontier = endpoint.broadcast(
            merged if endpoint.rank == MASTER_RANK else None, MASTER_RANK
        )
    elif endpoint.rank == MASTER_RANK:
        parts = [state.ns] + [
            endpoint.recv(source).vertices for source in range(1, endpoint.size)
        ]
        frontier = VertexMessage(level, np.concatenate(parts))
        for to in range(1, endpoint.size):
            endpoint.send(to, frontier)
    else:
        endpoint.send(MASTER_RANK, contribution)
        frontier = endpoint.recv(MASTER_RANK)

    vertices = frontier.vertices
    return vertices[(vertices >= state.start) & (vertices < state.end)]


@dataclass
class _RankOutcome:
    rank: int
    levels: np.ndarray
    records: list[LevelRecord]


def _rank_bfs(
    endpoint: Endpoint, g: Graph, pmap: PartitionMap, cfg: BfsConfig
) -> _RankOutcome:
    rank, size = endpoint.rank, endpoint.size
    state = LevelState.initial(rank, pmap, cfg.source)
    records: list[LevelRecord] = []

    while True:
        before = endpoint.counters.snapshot()
        t_start = time.perf_counter_ns()

        # Computation
        nbrs = g.expand(state.fs)
        owners = pmap.owners(nbrs)
        discovered: list[np.ndarray] = []
        hits = 0

        if cfg.strategy == Strategy.OPTIMIZED:
            local = owners == rank
            found = state.discover(nbrs[local])
            hits = len(found)
            discovered.append(found)
            nbrs, owners = nbrs[~local], owners[~local]

        buffers = _route(nbrs, owners, size)
        self_buffer, buffers[rank] = buffers[rank], _EMPTY
        if cfg.strategy == Strategy.OPTIMIZED and len(self_buffer):
            raise CorrectnessViolationError(
                f"Rank {rank}: self-addressed buffer not empty under optimized strategy"
            )

        t_compute = time.perf_counter_ns()

        # Communication
        outgoing = [VertexMessage(state.current_level, buffer) for buffer in buffers]
        incoming = _communicate(endpoint, outgoing, cfg.strategy)

        # Apply: the self buffer is handled here, after the exchange.
        received = [self_buffer] + [
            msg.vertices for source, msg in enumerate(incoming) if source != rank
        ]
        received = np.concatenate(received)
        if not state.owns(received):
            raise CorrectnessViolationError(
                f"Rank {rank} received vertices it does not own at level "
                f"{state.current_level}"
            )
        discovered.append(state.discover(received))
        state.ns = np.concatenate(discovered)

        # Frontier formation
        if cfg.frontier_mode == FrontierMode.MASTER_MERGE:
            next_fs = _merge_at_master(endpoint, state, cfg.merge_transport)
        else:
            next_fs = state.ns

        global_next = endpoint.allreduce_sum(len(state.ns))
        t_end = time.perf_counter_ns()

        delta = endpoint.counters.snapshot() - before
        records.append(
            LevelRecord(
                level=state.current_level,
                frontier_size_global=len(state.fs),
                wire_bytes=delta.bytes_sent,
                wire_bytes_received=delta.bytes_received,
                messages=delta.messages_sent,
                aggregation_copy_bytes=delta.aggregation_copy_bytes,
                local_shortcircuit_hits=hits,
                self_buffered_vertices=len(self_buffer),
                compute_ns=t_compute - t_start,
                comm_ns=t_end - t_compute,
                elapsed_nanoseconds=t_end - t_start,
            )
        )
        logger.debug(
            f"Rank {rank} level {state.current_level}: |FS|={len(state.fs)} "
            f"|NS|={len(state.ns)} global_next={global_next} "
            f"sent={delta.bytes_sent}B hits={hits}"
        )

        if global_next == 0:
            break

        state.fs, state.ns = next_fs, _EMPTY
        state.current_level += 1

    return _RankOutcome(rank, state.levels, records)


def bfs_distributed(
    g: Graph, pmap: PartitionMap, cfg: BfsConfig, world: WorldConfig
) -> BfsResult:
    """Runs the 1-D distributed BFS on `world.p` ranks.

    Returns the assembled global level vector (owned slices concatenated in
    rank order) and the per-level metrics merged over ranks.
    """
    source = check_vertex(cfg.source, g.vertex_count)
    if pmap.n != g.vertex_count:
        raise InvalidParameterError(
            f"Partition covers {pmap.n} vertices, graph has {g.vertex_count}"
        )
    if pmap.p != world.p or (cfg.p is not None and cfg.p != world.p):
        raise InvalidParameterError(
            f"Rank counts disagree: partition={pmap.p}, config={cfg.p}, world={world.p}"
        )

    logger.info(
        f"BFS from {source}: n={g.vertex_count}, p={world.p}, "
        f"strategy={cfg.strategy.value}, frontier={cfg.frontier_mode.value}, "
        f"backend={world.backend.value}"
    )

    outcomes: list[_RankOutcome] = spawn_world(
        world, lambda endpoint: _rank_bfs(endpoint, g, pmap, cfg)
    )

    levels = np.concatenate([outcome.levels for outcome in outcomes])
    metrics = RunMetrics.merge_ranks([outcome.records for outcome in outcomes])

    logger.info(
        f"BFS done: {metrics.levels_traversed} levels, "
        f"{metrics.total_wire_bytes} wire bytes, {metrics.total_messages} messages"
    )
    return BfsResult(levels, metrics)
