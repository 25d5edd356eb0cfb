"""Scaling summary of benchmark records: median times, speedups, wire-byte ratios."""
from __future__ import annotations

import statistics
from collections import defaultdict
from dataclasses import dataclass
from io import StringIO

from bfs1d.bench.errors import BenchUsageError
from bfs1d.bench.records import BenchRecord
from bfs1d.core.config import FrontierMode, Strategy
from rich.console import Console
from rich.table import Table

SUMMARY_WIDTH = 140

Variant = tuple[Strategy, FrontierMode]


@dataclass(frozen=True)
class ScalingRow:
    """One (variant, rank count) line of the summary."""

    strategy: Strategy
    frontier_mode: FrontierMode
    p: int
    n: int
    runs: int
    median_total_ns: float
    speedup: float
    wire_bytes: int
    crossover: bool


@dataclass(frozen=True)
class RatioRow:
    """Wire-byte ratios of the variants measured at one rank count."""

    p: int
    baseline_over_optimized: float | None
    distributed_over_master: float | None


def _ratio(numerator: float, denominator: float) -> float:
    if not denominator:
        return float("inf") if numerator else 1.0
    return numerator / denominator


def scaling_rows(records: list[BenchRecord]) -> list[ScalingRow]:
    """Per variant and rank count: median time, speedup and crossover flag.

    Speedup is relative to the variant's smallest rank count; a rank count whose
    median time exceeds the previous one of the same variant is a crossover.
    """
    if not records:
        raise BenchUsageError("Nothing to summarize: no records")

    grouped: dict[Variant, dict[int, list[BenchRecord]]] = defaultdict(
        lambda: defaultdict(list)
    )
    for record in records:
        grouped[(record.strategy, record.frontier_mode)][record.p].append(record)

    rows = []
    for (strategy, mode), by_p in sorted(grouped.items(), key=lambda kv: kv[0]):
        base_ns = None
        previous_ns = None
        for p in sorted(by_p):
            runs = by_p[p]
            median_ns = statistics.median(r.total_ns for r in runs)
            if base_ns is None:
                base_ns = median_ns
            rows.append(
                ScalingRow(
                    strategy=strategy,
                    frontier_mode=mode,
                    p=p,
                    n=runs[0].n,
                    runs=len(runs),
                    median_total_ns=median_ns,
                    speedup=_ratio(base_ns, median_ns),
                    wire_bytes=int(statistics.median(r.total_wire_bytes for r in runs)),
                    crossover=previous_ns is not None and median_ns > previous_ns,
                )
            )
            previous_ns = median_ns
    return rows


def _wire_by(rows: list[ScalingRow], p: int, **match) -> int | None:
    selected = [
        row.wire_bytes
        for row in rows
        if row.p == p and all(getattr(row, k) == v for k, v in match.items())
    ]
    return sum(selected) if selected else None


def ratio_rows(rows: list[ScalingRow]) -> list[RatioRow]:
    """Baseline/optimized and distributed/master_merge wire bytes per rank count.

    A ratio is None when one side of it was not benchmarked.
    """
    result = []
    for p in sorted({row.p for row in rows}):
        pairs = (
            (
                _wire_by(rows, p, strategy=Strategy.BASELINE),
                _wire_by(rows, p, strategy=Strategy.OPTIMIZED),
            ),
            (
                _wire_by(rows, p, frontier_mode=FrontierMode.DISTRIBUTED),
                _wire_by(rows, p, frontier_mode=FrontierMode.MASTER_MERGE),
            ),
        )
        strategies, modes = (
            None if num is None or den is None else _ratio(num, den)
            for num, den in pairs
        )
        result.append(RatioRow(p, strategies, modes))
    return result


def _fmt_ratio(value: float | None) -> str:
    return "-" if value is None else f"{value:.3f}"


def summarize(records: list[BenchRecord]) -> str:
    """Renders the scaling and wire-byte tables as plain text."""
    rows = scaling_rows(records)

    scaling = Table(title="Scaling (median over repetitions)")
    for column in ("strategy", "frontier", "p", "n", "runs"):
        scaling.add_column(column)
    for column in ("median total [ms]", "speedup", "wire bytes"):
        scaling.add_column(column, justify="right")
    scaling.add_column("note")

    for row in rows:
        scaling.add_row(
            row.strategy.value,
            row.frontier_mode.value,
            str(row.p),
            str(row.n),
            str(row.runs),
            f"{row.median_total_ns / 1e6:.3f}",
            f"{row.speedup:.2f}",
            str(row.wire_bytes),
            "crossover: slower than previous p" if row.crossover else "",
        )

    ratios = Table(title="Wire-byte ratios")
    ratios.add_column("p")
    ratios.add_column("baseline / optimized", justify="right")
    ratios.add_column("distributed / master_merge", justify="right")
    for ratio in ratio_rows(rows):
        ratios.add_row(
            str(ratio.p),
            _fmt_ratio(ratio.baseline_over_optimized),
            _fmt_ratio(ratio.distributed_over_master),
        )

    output = StringIO()
    console = Console(file=output, force_terminal=False, width=SUMMARY_WIDTH)
    console.print(scaling)
    console.print(ratios)

    return output.getvalue()
