import pytest
from bfs1d.bench.config import ScalingMode
from bfs1d.bench.plan import BenchPlan
from bfs1d.common.config import EnvVars
from bfs1d.core.config import FrontierMode, GraphFamily, Strategy
from bfs1d.core.generators import GeneratorSpec, default_edge_prob
from pydantic import ValidationError

STAR = GeneratorSpec(family=GraphFamily.STAR, n=100)
ER = GeneratorSpec(family=GraphFamily.ERDOS_RENYI, n=1000, seed=4)


def test_defaults() -> None:
    plan = BenchPlan(graph=STAR, ranks=[1, 2, 4])

    assert plan.mode == ScalingMode.STRONG
    assert plan.repetitions == 3
    assert plan.source == 0
    assert list(plan.variants()) == [
        (Strategy.BASELINE, FrontierMode.MASTER_MERGE),
        (Strategy.BASELINE, FrontierMode.DISTRIBUTED),
        (Strategy.OPTIMIZED, FrontierMode.MASTER_MERGE),
        (Strategy.OPTIMIZED, FrontierMode.DISTRIBUTED),
    ]


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(ranks=[1]),
        dict(graph=STAR, graph_path="graph.txt", ranks=[1]),
        dict(graph=STAR, ranks=[]),
        dict(graph=STAR, ranks=[2, 1]),
        dict(graph=STAR, ranks=[1, 1, 2]),
        dict(graph=STAR, ranks=[0, 1]),
        dict(graph=STAR, ranks=[1], repetitions=0),
        dict(graph=STAR, ranks=[1], strategies=[]),
        dict(graph=STAR, ranks=[1, 2], mode=ScalingMode.WEAK),
        dict(graph_path="g.txt", ranks=[1], mode=ScalingMode.WEAK, per_rank_n=10),
        dict(graph=STAR, ranks=[1, 2], mode=ScalingMode.SINGLE),
    ],
)
def test_invalid_plans(kwargs: dict) -> None:
    with pytest.raises(ValidationError):
        BenchPlan(**kwargs)


def test_vertex_count_per_mode() -> None:
    strong = BenchPlan(graph=STAR, ranks=[1, 2])
    weak = BenchPlan(
        graph=STAR, ranks=[1, 2, 8], mode=ScalingMode.WEAK, per_rank_n=1000
    )
    from_file = BenchPlan(graph_path="g.txt", ranks=[1])

    assert [strong.vertex_count(p) for p in (1, 2)] == [100, 100]
    assert [weak.vertex_count(p) for p in (1, 2, 8)] == [1000, 2000, 8000]
    assert from_file.vertex_count(1) is None


def test_spec_for_fills_default_edge_prob() -> None:
    plan = BenchPlan(graph=ER, ranks=[1])

    spec = plan.spec_for(5000)

    assert spec.n == 5000
    assert spec.edge_prob == default_edge_prob(5000)
    assert spec.seed == 4


def test_spec_for_keeps_explicit_edge_prob() -> None:
    plan = BenchPlan(graph=ER.model_copy(update={"edge_prob": 0.25}), ranks=[1])

    assert plan.spec_for(300).edge_prob == 0.25


def test_oracle_limit_from_env(monkeypatch) -> None:
    monkeypatch.setenv(EnvVars.ORACLE_LIMIT, "5")

    assert BenchPlan(graph=STAR, ranks=[1]).oracle_limit == 5
    assert BenchPlan(graph=STAR, ranks=[1], oracle_limit=7).oracle_limit == 7
