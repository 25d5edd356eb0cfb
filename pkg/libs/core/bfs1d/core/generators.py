"""Seeded graph generators: star, Erdős–Rényi G(n, p) and Watts–Strogatz.

Randomness is drawn from one Philox stream per source vertex (key = seed,
counter block = vertex id), so the output never depends on how the vertex range
is cut into generation chunks.
"""
from __future__ import annotations

from typing import Iterator

import numpy as np
from bfs1d.core.config import (
    CHUNKED_GENERATION_THRESHOLD,
    DEFAULT_CHUNK_SIZE,
    DEFAULT_ER_EXPECTED_DEGREE,
    VERTEX_DTYPE,
    GraphFamily,
)
from bfs1d.core.errors import InvalidParameterError
from bfs1d.core.graph import EdgeList
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

_MAX_SEED = 2**64


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: GraphFamily
    n: int = Field(description="Vertex count.")
    edge_prob: float | None = Field(
        default=None, description="Edge probability (erdos_renyi only)."
    )
    ring_degree: int | None = Field(
        default=None, description="Even lattice degree k (small_world only)."
    )
    rewire_prob: float | None = Field(
        default=None, description="Rewiring probability (small_world only)."
    )
    seed: int = Field(default=0, description="64-bit unsigned generator seed.")
    chunk_size: int | None = Field(
        default=None, description="Source vertices generated per chunk."
    )

    def check(self) -> GeneratorSpec:
        """Raises `InvalidParameterError` if the spec is not generable."""
        if self.n < 0:
            raise InvalidParameterError(f"Vertex count must be >= 0, got {self.n}")
        if not 0 <= self.seed < _MAX_SEED:
            raise InvalidParameterError(f"Seed must be a 64-bit unsigned int: {self.seed}")
        if self.chunk_size is not None and self.chunk_size < 1:
            raise InvalidParameterError(
                f"Chunk size must be positive, got {self.chunk_size}"
            )

        if self.family == GraphFamily.STAR and self.n < 1:
            raise InvalidParameterError("Star graph needs at least one vertex")

        if self.family == GraphFamily.ERDOS_RENYI:
            _check_probability("edge_prob", self.edge_prob)

        if self.family == GraphFamily.SMALL_WORLD:
            k = self.ring_degree
            if k is None or k < 2 or k % 2:
                raise InvalidParameterError(
                    f"Ring degree must be an even integer >= 2, got {k}"
                )
            if k >= self.n:
                raise InvalidParameterError(
                    f"Ring degree must be smaller than n ({self.n}), got {k}"
                )
            _check_probability("rewire_prob", self.rewire_prob)

        return self

    @property
    def effective_chunk_size(self) -> int:
        if self.chunk_size is not None:
            return max(1, min(self.chunk_size, self.n))
        if self.n > CHUNKED_GENERATION_THRESHOLD:
            return DEFAULT_CHUNK_SIZE
        return max(1, self.n)

    @property
    def expected_edges(self) -> float:
        n = self.n
        if self.family == GraphFamily.STAR:
            return max(n - 1, 0)
        if self.family == GraphFamily.ERDOS_RENYI:
            return n * (n - 1) / 2 * (self.edge_prob or 0.0)
        return n * (self.ring_degree or 0) / 2


def _check_probability(name: str, value: float | None) -> None:
    if value is None or not 0.0 <= value <= 1.0:
        raise InvalidParameterError(f"{name} must be within [0, 1], got {value}")


def default_edge_prob(n: int, expected_degree: int = DEFAULT_ER_EXPECTED_DEGREE) -> float:
    """Edge probability giving the requested expected degree in G(n, p)."""
    if n < 2:
        return 0.0
    return min(1.0, expected_degree / (n - 1))


def _vertex_rng(seed: int, vertex: int) -> np.random.Generator:
    # Each vertex owns a disjoint 2**128-block window of the Philox counter space.
    return np.random.Generator(np.random.Philox(key=seed, counter=vertex << 128))


def _chunk_bounds(n: int, chunk_size: int) -> Iterator[tuple[int, int]]:
    for start in range(0, n, chunk_size):
        yield start, min(start + chunk_size, n)


def _star_chunks(spec: GeneratorSpec) -> Iterator[np.ndarray]:
    for start, end in _chunk_bounds(spec.n, spec.effective_chunk_size):
        leaves = np.arange(max(start, 1), end, dtype=VERTEX_DTYPE)
        yield np.column_stack([np.zeros_like(leaves), leaves])


def _erdos_renyi_chunks(spec: GeneratorSpec) -> Iterator[np.ndarray]:
    n, p = spec.n, spec.edge_prob

    for start, end in _chunk_bounds(n, spec.effective_chunk_size):
        rows = []
        for u in range(start, end):
            population = n - u - 1
            if population <= 0 or p == 0.0:
                continue

            rng = _vertex_rng(spec.seed, u)
            k = int(rng.binomial(population, p))
            if not k:
                continue

            targets = np.sort(rng.choice(population, size=k, replace=False)) + u + 1
            rows.append(
                np.column_stack([np.full(k, u, dtype=VERTEX_DTYPE), targets])
            )

        yield np.concatenate(rows) if rows else np.zeros((0, 2), dtype=VERTEX_DTYPE)


def _is_undecided_lattice_edge(u: int, offset: int, w: int, n: int, half: int) -> bool:
    """Whether {u, w} is a ring-lattice edge not yet processed.

    Lattice edge {a, a + d mod n} (1 <= d <= k/2) belongs to source `a`; `u` is
    processing its offset `offset`, so its own offsets >= `offset` and all
    lattice edges of sources > u are still undecided.
    """
    forward = (w - u) % n
    if 1 <= forward <= half:
        return forward >= offset

    backward = (u - w) % n
    if 1 <= backward <= half:
        return w > u

    return False


def _small_world_chunks(spec: GeneratorSpec) -> Iterator[np.ndarray]:
    n, half, beta = spec.n, spec.ring_degree // 2, spec.rewire_prob
    present: set[int] = set()
    kept_lattice = 0

    def key(a: int, b: int) -> int:
        return min(a, b) * n + max(a, b)

    for start, end in _chunk_bounds(n, spec.effective_chunk_size):
        rows: list[tuple[int, int]] = []
        for u in range(start, end):
            rng = _vertex_rng(spec.seed, u)
            draws = rng.random(half)

            for offset in range(1, half + 1):
                target = (u + offset) % n

                if draws[offset - 1] < beta:
                    for _ in range(n):
                        w = int(rng.integers(n))
                        if (
                            w != u
                            and key(u, w) not in present
                            and not _is_undecided_lattice_edge(u, offset, w, n, half)
                        ):
                            target = w
                            break
                    else:
                        kept_lattice += 1

                present.add(key(u, target))
                rows.append((min(u, target), max(u, target)))

        yield np.asarray(rows, dtype=VERTEX_DTYPE).reshape(-1, 2)

    if kept_lattice:
        logger.warning(
            f"Small-world generation kept {kept_lattice} lattice edges "
            f"after {n} failed rewiring draws each"
        )


_CHUNK_GENERATORS = {
    GraphFamily.STAR: _star_chunks,
    GraphFamily.ERDOS_RENYI: _erdos_renyi_chunks,
    GraphFamily.SMALL_WORLD: _small_world_chunks,
}


def iter_edge_chunks(spec: GeneratorSpec) -> Iterator[np.ndarray]:
    """Yields the edges of `spec` chunk by chunk (`chunk_size` source vertices each)."""
    spec.check()
    chunk_size = spec.effective_chunk_size

    for idx, chunk in enumerate(_CHUNK_GENERATORS[spec.family](spec)):
        logger.debug(
            f"Generated {spec.family.value} chunk #{idx} "
            f"(<= {chunk_size} sources): {len(chunk)} edges"
        )
        yield chunk


def generate(spec: GeneratorSpec) -> EdgeList:
    """Generates the full edge list by concatenating all chunks."""
    edges = EdgeList.concatenate(spec.n, list(iter_edge_chunks(spec)))
    logger.info(
        f"Generated {spec.family.value} graph: n={spec.n}, edges={edges.edge_count}, "
        f"seed={spec.seed}"
    )
    return edges


def generate_star(n: int, chunk_size: int | None = None) -> EdgeList:
    """Star with hub 0: edges (0, i) for 1 <= i < n."""
    if n < 1:
        raise InvalidParameterError(f"Star graph needs at least one vertex, got n={n}")
    return generate(GeneratorSpec(family=GraphFamily.STAR, n=n, chunk_size=chunk_size))


def generate_erdos_renyi(spec: GeneratorSpec) -> EdgeList:
    """G(n, p): every unordered pair is included independently with `edge_prob`."""
    if spec.family != GraphFamily.ERDOS_RENYI:
        raise InvalidParameterError(f"Expected erdos_renyi spec, got {spec.family.value}")
    return generate(spec)


def generate_small_world(spec: GeneratorSpec) -> EdgeList:
    """Watts–Strogatz: ring lattice of degree k, each edge rewired with `rewire_prob`.

    A rewired edge keeps its source and gets a uniform random target that is
    neither the source nor an existing neighbor; after `n` failed draws the
    lattice edge is kept, so the edge count is always n*k/2.
    """
    if spec.family != GraphFamily.SMALL_WORLD:
        raise InvalidParameterError(f"Expected small_world spec, got {spec.family.value}")
    return generate(spec)
