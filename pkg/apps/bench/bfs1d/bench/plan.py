from __future__ import annotations

from pathlib import Path
from typing import Iterator

from bfs1d.bench.config import DEFAULT_REPETITIONS, ScalingMode, oracle_limit
from bfs1d.core.config import FrontierMode, GraphFamily, MergeTransport, Strategy
from bfs1d.core.generators import GeneratorSpec, default_edge_prob
from bfs1d.transport import Backend
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BenchPlan(BaseModel):
    """One benchmark sweep: a graph, the rank counts and the variants to time."""

    model_config = ConfigDict(frozen=True)

    mode: ScalingMode = ScalingMode.STRONG
    graph: GeneratorSpec | None = Field(
        default=None, description="Generated input; `edge_prob=None` means default."
    )
    graph_path: Path | None = Field(default=None, description="Edge-list file input.")
    per_rank_n: int | None = Field(
        default=None, ge=1, description="Vertices per rank (weak mode)."
    )
    source: int = Field(default=0, ge=0)
    ranks: list[int] = Field(min_length=1)
    strategies: list[Strategy] = Field(
        default_factory=lambda: list(Strategy), min_length=1
    )
    frontier_modes: list[FrontierMode] = Field(
        default_factory=lambda: list(FrontierMode), min_length=1
    )
    merge_transport: MergeTransport = MergeTransport.COLLECTIVE
    backend: Backend = Backend.IN_PROCESS
    repetitions: int = Field(default=DEFAULT_REPETITIONS, ge=1)
    timeout_s: float | None = Field(default=None, gt=0)
    oracle_limit: int = Field(default_factory=oracle_limit, ge=0)
    output: Path | None = None

    @model_validator(mode="after")
    def _check(self) -> BenchPlan:
        if (self.graph is None) == (self.graph_path is None):
            raise ValueError("Exactly one of a generator spec or a graph file needed")

        if any(p < 1 for p in self.ranks):
            raise ValueError(f"Rank counts must be positive: {self.ranks}")
        if self.ranks != sorted(set(self.ranks)):
            raise ValueError(f"Rank counts must be sorted ascending: {self.ranks}")

        if self.mode == ScalingMode.WEAK:
            if self.per_rank_n is None:
                raise ValueError("Weak scaling needs a per-rank vertex count")
            if self.graph is None:
                raise ValueError("Weak scaling needs a generated graph, not a file")
        if self.mode == ScalingMode.SINGLE and len(self.ranks) != 1:
            raise ValueError(f"Single mode runs one rank count, got {self.ranks}")

        return self

    def vertex_count(self, p: int) -> int | None:
        """Vertex count at `p` ranks, or None for file input."""
        if self.graph is None:
            return None
        if self.mode == ScalingMode.WEAK:
            return self.per_rank_n * p
        return self.graph.n

    def spec_for(self, n: int) -> GeneratorSpec:
        """Concrete generator spec for an `n`-vertex instance of the plan's graph."""
        update: dict = {"n": n}
        graph = self.graph
        if graph.family == GraphFamily.ERDOS_RENYI and graph.edge_prob is None:
            update["edge_prob"] = default_edge_prob(n)
        return graph.model_copy(update=update)

    def variants(self) -> Iterator[tuple[Strategy, FrontierMode]]:
        for strategy in self.strategies:
            for mode in self.frontier_modes:
                yield strategy, mode
