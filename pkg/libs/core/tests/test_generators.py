import math

import numpy as np
import pytest
from bfs1d.core.config import GraphFamily
from bfs1d.core.errors import InvalidParameterError
from bfs1d.core.generators import (
    GeneratorSpec,
    default_edge_prob,
    generate,
    generate_erdos_renyi,
    generate_small_world,
    generate_star,
    iter_edge_chunks,
)
from bfs1d.core.graph import build_graph


def _er(n: int, edge_prob: float, seed: int = 0, **kwargs) -> GeneratorSpec:
    return GeneratorSpec(
        family=GraphFamily.ERDOS_RENYI, n=n, edge_prob=edge_prob, seed=seed, **kwargs
    )


def _ws(n: int, k: int, beta: float, seed: int = 0, **kwargs) -> GeneratorSpec:
    return GeneratorSpec(
        family=GraphFamily.SMALL_WORLD,
        n=n,
        ring_degree=k,
        rewire_prob=beta,
        seed=seed,
        **kwargs,
    )


def test_generate_star_5() -> None:
    edges = generate_star(5)

    assert edges.edges.tolist() == [[0, 1], [0, 2], [0, 3], [0, 4]]


def test_generate_star_single_vertex() -> None:
    edges = generate_star(1)

    assert edges.vertex_count == 1
    assert edges.edge_count == 0


def test_generate_star_zero_vertices() -> None:
    with pytest.raises(InvalidParameterError):
        generate_star(0)


@pytest.mark.slow
def test_generate_star_large_counts_edges() -> None:
    # Above the chunking threshold: generated in 1M-source chunks.
    spec = GeneratorSpec(family=GraphFamily.STAR, n=4_000_000)

    assert spec.effective_chunk_size == 1_000_000
    assert sum(len(chunk) for chunk in iter_edge_chunks(spec)) == 3_999_999


@pytest.mark.parametrize("n", (2, 7, 100, 1000))
def test_star_edge_count(n: int) -> None:
    assert generate_star(n, chunk_size=3).edge_count == n - 1


def test_erdos_renyi_zero_probability() -> None:
    assert generate_erdos_renyi(_er(100, 0.0)).edge_count == 0


def test_erdos_renyi_complete() -> None:
    edges = generate_erdos_renyi(_er(100, 1.0))

    assert edges.edge_count == 4950
    build_graph(edges)


@pytest.mark.parametrize(
    "n, edge_prob, seed",
    [
        (2000, 0.01, 7),
        (1000, 0.05, 13),
        (3000, 0.002, 101),
    ],
)
def test_erdos_renyi_edge_count_within_4_sigma(
    n: int, edge_prob: float, seed: int
) -> None:
    pairs = math.comb(n, 2)
    mean = pairs * edge_prob
    sigma = math.sqrt(pairs * edge_prob * (1 - edge_prob))

    edges = generate_erdos_renyi(_er(n, edge_prob, seed))

    assert abs(edges.edge_count - mean) <= 4 * sigma


def test_erdos_renyi_sigma_arithmetic() -> None:
    pairs = math.comb(2000, 2)

    assert pairs * 0.01 == pytest.approx(19_990)
    assert math.sqrt(pairs * 0.01 * 0.99) == pytest.approx(140.68, abs=0.01)


def test_erdos_renyi_is_deterministic() -> None:
    spec = _er(500, 0.02, seed=99)

    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(_er(500, 0.02, seed=100))


@pytest.mark.parametrize("edge_prob", (-0.1, 1.5, None))
def test_erdos_renyi_invalid_probability(edge_prob) -> None:
    with pytest.raises(InvalidParameterError, match="edge_prob"):
        generate_erdos_renyi(_er(10, edge_prob))


def test_small_world_ring_lattice() -> None:
    edges = generate_small_world(_ws(10, 4, 0.0))
    g = build_graph(edges)

    assert edges.edge_count == 20
    assert g.degrees().tolist() == [4] * 10


def test_small_world_cycle() -> None:
    g = build_graph(generate_small_world(_ws(6, 2, 0.0)))

    assert g.to_edge_list().edges.tolist() == [
        [0, 1],
        [0, 5],
        [1, 2],
        [2, 3],
        [3, 4],
        [4, 5],
    ]


def test_small_world_rewired() -> None:
    edges = generate_small_world(_ws(500, 6, 0.1, seed=11))

    assert edges.edge_count == 1500
    assert edges.validate() is edges
    lattice = generate_small_world(_ws(500, 6, 0.0))
    assert edges.canonical() != lattice.canonical()


def test_small_world_full_rewiring_keeps_edge_count() -> None:
    edges = generate_small_world(_ws(30, 4, 1.0, seed=5))

    assert edges.edge_count == 60
    edges.validate()


@pytest.mark.parametrize(
    "k, n, match",
    [
        (3, 10, "even"),
        (0, 10, "even"),
        (None, 10, "even"),
        (10, 10, "smaller than n"),
        (12, 10, "smaller than n"),
    ],
)
def test_small_world_invalid_ring_degree(k, n: int, match: str) -> None:
    spec = GeneratorSpec(
        family=GraphFamily.SMALL_WORLD, n=n, ring_degree=k, rewire_prob=0.1
    )

    with pytest.raises(InvalidParameterError, match=match):
        generate_small_world(spec)


def test_small_world_invalid_rewire_probability() -> None:
    with pytest.raises(InvalidParameterError, match="rewire_prob"):
        generate_small_world(_ws(10, 4, 2.0))


def test_family_mismatch() -> None:
    with pytest.raises(InvalidParameterError, match="small_world"):
        generate_small_world(_er(10, 0.5))


@pytest.mark.parametrize(
    "spec_kwargs",
    [
        {"n": -1},
        {"n": 10, "seed": -1},
        {"n": 10, "seed": 2**64},
        {"n": 10, "chunk_size": 0},
    ],
)
def test_invalid_common_parameters(spec_kwargs) -> None:
    with pytest.raises(InvalidParameterError):
        generate(
            GeneratorSpec(
                family=GraphFamily.ERDOS_RENYI, edge_prob=0.1, **spec_kwargs
            )
        )


@pytest.mark.parametrize(
    "make_spec",
    [
        lambda chunk: _er(700, 0.03, seed=3, chunk_size=chunk),
        lambda chunk: _ws(400, 6, 0.3, seed=17, chunk_size=chunk),
        lambda chunk: GeneratorSpec(family=GraphFamily.STAR, n=333, chunk_size=chunk),
    ],
    ids=["erdos_renyi", "small_world", "star"],
)
def test_chunk_size_does_not_change_output(make_spec) -> None:
    reference = generate(make_spec(None))

    for chunk in (1, 7, 64, 10_000):
        assert generate(make_spec(chunk)) == reference


def test_iter_edge_chunks_respects_chunk_size() -> None:
    spec = _ws(100, 4, 0.2, seed=1, chunk_size=10)

    chunks = list(iter_edge_chunks(spec))

    assert len(chunks) == 10
    # Every source vertex emits exactly k/2 edges.
    assert all(len(chunk) == 20 for chunk in chunks)


def test_generated_edges_are_ordered_pairs() -> None:
    edges = generate(_ws(200, 4, 0.5, seed=23))

    assert np.all(edges.edges[:, 0] < edges.edges[:, 1])


@pytest.mark.parametrize(
    "n, expected",
    [
        (0, 0.0),
        (1, 0.0),
        (17, 1.0),
        (100_001, 16 / 100_000),
    ],
)
def test_default_edge_prob(n: int, expected: float) -> None:
    assert default_edge_prob(n) == pytest.approx(expected)


def test_expected_edges() -> None:
    assert _er(100, 0.5).expected_edges == pytest.approx(2475)
    assert _ws(10, 4, 0.1).expected_edges == 20
    assert GeneratorSpec(family=GraphFamily.STAR, n=10).expected_edges == 9
