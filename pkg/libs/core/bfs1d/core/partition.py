"""1-D block partitioning of the vertex range across ranks.

Rank r owns the contiguous block [r * chunk, min((r + 1) * chunk, n)) with
chunk = ceil(n / p); the last ranks may own fewer vertices or none at all.
"""
from __future__ import annotations

import numpy as np
from bfs1d.core.config import VERTEX_DTYPE
from bfs1d.core.errors import InvalidRankError, InvalidVertexError
from pydantic import BaseModel, ConfigDict, Field


class PartitionMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="Total vertex count.")
    p: int = Field(ge=1, description="Rank count.")

    @property
    def chunk(self) -> int:
        """Block width, ceil(n / p)."""
        return -(-self.n // self.p)

    def _check_rank(self, r: int) -> int:
        if not 0 <= r < self.p:
            raise InvalidRankError(f"Rank {r} out of range [0, {self.p})")
        return int(r)

    def _check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise InvalidVertexError(f"Vertex {v} out of range [0, {self.n})")
        return int(v)

    def owner(self, v: int) -> int:
        return self._check_vertex(v) // self.chunk

    def owners(self, vertices: np.ndarray) -> np.ndarray:
        """Vectorized `owner` without range checks."""
        chunk = self.chunk or 1
        return np.asarray(vertices, dtype=VERTEX_DTYPE) // chunk

    def local_range(self, r: int) -> tuple[int, int]:
        r = self._check_rank(r)
        start = min(r * self.chunk, self.n)
        return start, min((r + 1) * self.chunk, self.n)

    def range_size(self, r: int) -> int:
        start, end = self.local_range(r)
        return end - start

    def to_local(self, v: int, r: int) -> int:
        v, r = self._check_vertex(v), self._check_rank(r)
        if v // self.chunk != r:
            raise InvalidVertexError(
                f"Vertex {v} is owned by rank {v // self.chunk}, not by rank {r}"
            )
        return v - r * self.chunk

    def to_global(self, i: int, r: int) -> int:
        size = self.range_size(r)
        if not 0 <= i < size:
            raise InvalidVertexError(
                f"Local index {i} out of range [0, {size}) of rank {r}"
            )
        return r * self.chunk + int(i)


def owner(v: int, pmap: PartitionMap) -> int:
    return pmap.owner(v)


def local_range(r: int, pmap: PartitionMap) -> tuple[int, int]:
    return pmap.local_range(r)


def to_local(v: int, r: int, pmap: PartitionMap) -> int:
    return pmap.to_local(v, r)


def to_global(i: int, r: int, pmap: PartitionMap) -> int:
    return pmap.to_global(i, r)
