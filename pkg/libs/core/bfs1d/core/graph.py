from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from bfs1d.core.config import VERTEX_DTYPE
from bfs1d.core.errors import GraphInputError, InvalidVertexError


def _as_vertex_array(values, shape_hint: tuple[int, ...] = (-1,)) -> np.ndarray:
    arr = np.asarray(values, dtype=VERTEX_DTYPE)
    if arr.size == 0:
        return np.zeros((0,) + shape_hint[1:], dtype=VERTEX_DTYPE)
    return arr.reshape(shape_hint)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def check_vertex(v: int, n: int) -> int:
    """Returns `v` as int if it is a valid vertex id of an `n`-vertex graph."""
    if not 0 <= v < n:
        raise InvalidVertexError(f"Vertex {v} out of range [0, {n})")
    return int(v)


@dataclass(frozen=True, eq=False)
class EdgeList:
    """Undirected edges over global vertex ids, one `(u, v)` row per edge."""

    vertex_count: int
    edges: np.ndarray

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphInputError(
                f"Vertex count must be non-negative, got {self.vertex_count}"
            )
        object.__setattr__(self, "vertex_count", int(self.vertex_count))
        object.__setattr__(self, "edges", _frozen(_as_vertex_array(self.edges, (-1, 2))))

    @classmethod
    def empty(cls, vertex_count: int) -> EdgeList:
        return cls(vertex_count, np.zeros((0, 2), dtype=VERTEX_DTYPE))

    @classmethod
    def concatenate(cls, vertex_count: int, chunks: list[np.ndarray]) -> EdgeList:
        """Joins per-chunk edge arrays into one edge list."""
        chunks = [chunk for chunk in chunks if len(chunk)]
        if not chunks:
            return cls.empty(vertex_count)
        return cls(vertex_count, np.concatenate(chunks, axis=0))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.edge_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeList):
            return NotImplemented
        return self.vertex_count == other.vertex_count and np.array_equal(
            self.edges, other.edges
        )

    def __repr__(self) -> str:
        return f"EdgeList(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    def canonical(self) -> EdgeList:
        """Returns the edges as `u < v` pairs sorted lexicographically."""
        if not self.edge_count:
            return self
        lo = self.edges.min(axis=1)
        hi = self.edges.max(axis=1)
        order = np.lexsort((hi, lo))
        return EdgeList(self.vertex_count, np.column_stack([lo[order], hi[order]]))

    def validate(self) -> EdgeList:
        """Checks range, self-loop and duplicate invariants.

        Raises `GraphInputError` naming the first offending pair.
        """
        if not self.edge_count:
            return self

        n = self.vertex_count
        u, v = self.edges[:, 0], self.edges[:, 1]

        bad = np.flatnonzero((u < 0) | (u >= n) | (v < 0) | (v >= n))
        if bad.size:
            pair = tuple(int(x) for x in self.edges[bad[0]])
            raise GraphInputError(f"Edge {pair} has a vertex out of range [0, {n})")

        loops = np.flatnonzero(u == v)
        if loops.size:
            pair = tuple(int(x) for x in self.edges[loops[0]])
            raise GraphInputError(f"Self-loop edge {pair}")

        keys = np.minimum(u, v) * n + np.maximum(u, v)
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        dup = np.flatnonzero(sorted_keys[1:] == sorted_keys[:-1])
        if dup.size:
            first, second = order[dup[0]], order[dup[0] + 1]
            pair = tuple(int(x) for x in self.edges[second])
            orig = tuple(int(x) for x in self.edges[first])
            raise GraphInputError(f"Duplicate edge {pair} (already present as {orig})")

        return self


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph in compressed sparse row form.

    Every undirected edge is stored in both endpoints' adjacency lists and each
    adjacency list is sorted ascending.
    """

    vertex_count: int
    row_offsets: np.ndarray
    neighbors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vertex_count", int(self.vertex_count))
        object.__setattr__(self, "row_offsets", _frozen(_as_vertex_array(self.row_offsets)))
        object.__setattr__(self, "neighbors", _frozen(_as_vertex_array(self.neighbors)))
        if len(self.row_offsets) != self.vertex_count + 1:
            raise GraphInputError(
                f"row_offsets must have {self.vertex_count + 1} entries, "
                f"got {len(self.row_offsets)}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.neighbors, other.neighbors)
        )

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    @property
    def edge_count(self) -> int:
        return len(self.neighbors) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def degree(self, v: int) -> int:
        v = check_vertex(v, self.vertex_count)
        return int(self.row_offsets[v + 1] - self.row_offsets[v])

    def adjacency(self, v: int) -> np.ndarray:
        v = check_vertex(v, self.vertex_count)
        return self.neighbors[self.row_offsets[v] : self.row_offsets[v + 1]]

    def expand(self, vertices: np.ndarray) -> np.ndarray:
        """Concatenated adjacency lists of `vertices`, in the given vertex order."""
        vertices = _as_vertex_array(vertices)
        if not vertices.size:
            return np.zeros(0, dtype=VERTEX_DTYPE)

        starts = self.row_offsets[vertices]
        counts = self.row_offsets[vertices + 1] - starts
        total = int(counts.sum())
        if not total:
            return np.zeros(0, dtype=VERTEX_DTYPE)

        group_base = starts - (np.cumsum(counts) - counts)
        return self.neighbors[np.repeat(group_base, counts) + np.arange(total)]

    def sources(self) -> np.ndarray:
        """Source vertex of every entry of `neighbors`."""
        return np.repeat(np.arange(self.vertex_count, dtype=VERTEX_DTYPE), self.degrees())

    def to_edge_list(self) -> EdgeList:
        """Canonical edge list: `u < v` pairs in lexicographic order."""
        src = self.sources()
        forward = src < self.neighbors
        return EdgeList(
            self.vertex_count, np.column_stack([src[forward], self.neighbors[forward]])
        )

    def validate(self) -> Graph:
        """Exhaustive scan of the CSR invariants."""
        n = self.vertex_count
        offsets, nbrs = self.row_offsets, self.neighbors

        if offsets[0] != 0 or offsets[-1] != len(nbrs):
            raise GraphInputError("row_offsets must start at 0 and end at len(neighbors)")
        if np.any(np.diff(offsets) < 0):
            raise GraphInputError("row_offsets must be non-decreasing")
        if nbrs.size and (nbrs.min() < 0 or nbrs.max() >= n):
            raise GraphInputError(f"Neighbor id out of range [0, {n})")

        src = self.sources()
        loops = np.flatnonzero(src == nbrs)
        if loops.size:
            v = int(src[loops[0]])
            raise GraphInputError(f"Self-loop at vertex {v}")

        forward = np.sort(src * n + nbrs)
        backward = np.sort(nbrs * n + src)
        if not np.array_equal(forward, backward):
            raise GraphInputError("Adjacency is not symmetric")

        return self


def build_graph(edges: EdgeList) -> Graph:
    """Builds the CSR graph storing both directions of every edge."""
    edges.validate()
    n = edges.vertex_count

    u, v = edges.edges[:, 0], edges.edges[:, 1]
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    order = np.lexsort((dst, src))

    row_offsets = np.zeros(n + 1, dtype=VERTEX_DTYPE)
    np.cumsum(np.bincount(src, minlength=n), out=row_offsets[1:])

    return Graph(n, row_offsets, dst[order])


def path_graph(n: int) -> EdgeList:
    """Edge list of the path 0 - 1 - ... - (n-1)."""
    if n < 1:
        return EdgeList.empty(max(n, 0))
    ids = np.arange(n - 1, dtype=VERTEX_DTYPE)
    return EdgeList(n, np.column_stack([ids, ids + 1]))


def disjoint_union(first: EdgeList, second: EdgeList) -> EdgeList:
    """Places `second` after `first`, shifting its vertex ids."""
    return EdgeList.concatenate(
        first.vertex_count + second.vertex_count,
        [first.edges, second.edges + first.vertex_count],
    )
