from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from bfs1d.core.bfs import BfsConfig, bfs_distributed
from bfs1d.core.config import FrontierMode, Strategy
from bfs1d.core.errors import CorrectnessViolationError
from bfs1d.core.graph import Graph
from bfs1d.core.metrics import RunMetrics
from bfs1d.core.partition import PartitionMap
from bfs1d.transport import WorldConfig
from loguru import logger

Combination = tuple[Strategy, FrontierMode]

COMBINATIONS: list[Combination] = list(itertools.product(Strategy, FrontierMode))


@dataclass
class StrategyComparison:
    """Side-by-side metrics of every (strategy, frontier_mode) combination."""

    source: int
    levels: np.ndarray
    metrics: dict[Combination, RunMetrics] = field(default_factory=dict)

    def wire_ratio(self, numerator: Combination, denominator: Combination) -> float:
        denom = self.metrics[denominator].total_wire_bytes
        if not denom:
            return float("inf") if self.metrics[numerator].total_wire_bytes else 1.0
        return self.metrics[numerator].total_wire_bytes / denom

    def render(self) -> str:
        header = (
            f"{'strategy':<10} {'frontier':<13} {'levels':>6} {'wire_bytes':>12} "
            f"{'messages':>9} {'agg_copy':>10} {'hits':>8} {'total_ms':>9}"
        )
        lines = [header, "-" * len(header)]
        for (strategy, mode), metrics in self.metrics.items():
            lines.append(
                f"{strategy.value:<10} {mode.value:<13} {metrics.levels_traversed:>6} "
                f"{metrics.total_wire_bytes:>12} {metrics.total_messages:>9} "
                f"{metrics.aggregation_copy_bytes:>10} {metrics.shortcircuit_hits:>8} "
                f"{metrics.total_ns / 1e6:>9.2f}"
            )
        return "\n".join(lines)


def compare_strategies(
    g: Graph, pmap: PartitionMap, source: int, world: WorldConfig
) -> StrategyComparison:
    """Runs all four strategy x frontier_mode combinations on the same input.

    Raises `CorrectnessViolationError` if any two level vectors differ.
    """
    comparison: StrategyComparison | None = None

    for strategy, mode in COMBINATIONS:
        cfg = BfsConfig(source=source, strategy=strategy, frontier_mode=mode)
        levels, metrics = bfs_distributed(g, pmap, cfg, world)

        if comparison is None:
            comparison = StrategyComparison(source=source, levels=levels)
        elif not np.array_equal(levels, comparison.levels):
            mismatch = int(np.flatnonzero(levels != comparison.levels)[0])
            raise CorrectnessViolationError(
                f"{strategy.value}/{mode.value} disagrees with "
                f"{COMBINATIONS[0][0].value}/{COMBINATIONS[0][1].value} at vertex "
                f"{mismatch}: {levels[mismatch]} != {comparison.levels[mismatch]}"
            )

        comparison.metrics[(strategy, mode)] = metrics

    logger.info(f"Strategy comparison (source={source}, p={world.p}):\n{comparison.render()}")
    return comparison
