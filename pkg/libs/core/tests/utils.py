from collections import deque

import numpy as np
from bfs1d.core import config
from bfs1d.core.config import UNVISITED, GraphFamily
from bfs1d.core.generators import GeneratorSpec, generate
from bfs1d.core.graph import EdgeList, Graph, build_graph

RESOURCES_DIR = config.ROOT_DIR / "tests" / "_resources"


def reference_levels(g: Graph, source: int) -> np.ndarray:
    """Textbook queue-based BFS, independent of the vectorized oracle."""
    levels = [None] * g.vertex_count
    levels[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency(u).tolist():
            if levels[v] is None:
                levels[v] = levels[u] + 1
                queue.append(v)
    return np.array(
        [UNVISITED if level is None else level for level in levels], dtype=np.uint64
    )


def random_spec(rng: np.random.Generator, max_n: int = 2000) -> GeneratorSpec:
    """Random generator spec of any family, sized for the in-process backend."""
    family = list(GraphFamily)[int(rng.integers(len(GraphFamily)))]
    n = int(rng.integers(1, max_n + 1))
    seed = int(rng.integers(2**63))

    if family == GraphFamily.SMALL_WORLD and n >= 7:
        return GeneratorSpec(
            family=family,
            n=n,
            ring_degree=int(rng.choice([4, 6])),
            rewire_prob=float(rng.uniform(0.1, 0.5)),
            seed=seed,
        )
    if family == GraphFamily.ERDOS_RENYI or family == GraphFamily.SMALL_WORLD:
        mean_degree = float(rng.uniform(0.5, 8.0))
        return GeneratorSpec(
            family=GraphFamily.ERDOS_RENYI,
            n=n,
            edge_prob=min(1.0, mean_degree / max(n - 1, 1)),
            seed=seed,
        )
    return GeneratorSpec(family=GraphFamily.STAR, n=n)


def graph_of(spec: GeneratorSpec) -> Graph:
    return build_graph(generate(spec))


def two_triangles() -> EdgeList:
    """Two disjoint 3-cycles: {0, 1, 2} and {3, 4, 5}."""
    return EdgeList(6, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]])


def er_graph(n: int, edge_prob: float, seed: int) -> Graph:
    return graph_of(
        GeneratorSpec(
            family=GraphFamily.ERDOS_RENYI, n=n, edge_prob=edge_prob, seed=seed
        )
    )


def ws_graph(n: int, k: int, rewire_prob: float, seed: int) -> Graph:
    return graph_of(
        GeneratorSpec(
            family=GraphFamily.SMALL_WORLD,
            n=n,
            ring_degree=k,
            rewire_prob=rewire_prob,
            seed=seed,
        )
    )
