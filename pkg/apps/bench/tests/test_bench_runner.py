from unittest.mock import patch

import numpy as np
import pytest
from bfs1d.bench import runner
from bfs1d.bench.config import FILE_FAMILY, ScalingMode
from bfs1d.bench.errors import BenchCorrectnessError, BenchIOError, BenchUsageError
from bfs1d.bench.plan import BenchPlan
from bfs1d.bench.records import read_records
from bfs1d.core.config import FrontierMode, GraphFamily, Strategy
from bfs1d.core.generators import GeneratorSpec, generate_star
from bfs1d.core.io import write_edge_list


def _star(n: int) -> GeneratorSpec:
    return GeneratorSpec(family=GraphFamily.STAR, n=n)


def _plan(**kwargs) -> BenchPlan:
    kwargs.setdefault("repetitions", 1)
    return BenchPlan(**kwargs)


def test_strong_star_sweep() -> None:
    plan = _plan(
        graph=_star(10_000),
        ranks=[1, 2, 4],
        strategies=[Strategy.OPTIMIZED],
        frontier_modes=[FrontierMode.DISTRIBUTED],
    )

    records = runner.run_plan(plan)

    assert [r.p for r in records] == [1, 2, 4]
    assert {r.levels_traversed for r in records} == {2}
    assert {(r.n, r.edges, r.family) for r in records} == {(10_000, 9_999, "star")}
    assert {r.aggregation_copy_bytes for r in records} == {0}


def test_single_rank_moves_no_bytes() -> None:
    plan = _plan(mode=ScalingMode.SINGLE, graph=_star(500), ranks=[1])

    records = runner.run_plan(plan)

    assert len(records) == 4
    assert {r.total_wire_bytes for r in records} == {0}
    assert {r.total_messages for r in records} == {0}


def test_weak_scaling_grows_n() -> None:
    plan = _plan(
        mode=ScalingMode.WEAK,
        graph=_star(1),
        per_rank_n=1000,
        ranks=[1, 2],
        strategies=[Strategy.BASELINE],
        frontier_modes=[FrontierMode.MASTER_MERGE],
    )

    records = runner.run_plan(plan)

    assert [(r.p, r.n) for r in records] == [(1, 1000), (2, 2000)]


def test_one_record_per_run(tmp_path) -> None:
    plan = _plan(
        graph=GeneratorSpec(
            family=GraphFamily.SMALL_WORLD,
            n=300,
            ring_degree=4,
            rewire_prob=0.1,
            seed=9,
        ),
        source=17,
        ranks=[1, 3],
        repetitions=2,
        output=tmp_path / "ws.csv",
    )

    records = runner.run_plan(plan)

    assert len(records) == 2 * 4 * 2
    assert [r.repetition for r in records[:2]] == [0, 1]
    assert read_records(tmp_path / "ws.csv") == records


def test_non_timing_columns_are_deterministic() -> None:
    plan = _plan(
        graph=GeneratorSpec(family=GraphFamily.ERDOS_RENYI, n=800, seed=21),
        ranks=[2, 4],
    )

    first = [r.without_timings() for r in runner.run_plan(plan)]
    second = [r.without_timings() for r in runner.run_plan(plan)]

    assert first == second


def test_wire_bytes_grow_with_ranks() -> None:
    plan = _plan(
        graph=GeneratorSpec(family=GraphFamily.ERDOS_RENYI, n=2000, seed=5),
        ranks=[1, 2, 4, 8],
    )

    records = runner.run_plan(plan)

    for strategy, mode in plan.variants():
        wire = [
            r.total_wire_bytes
            for r in records
            if (r.strategy, r.frontier_mode) == (strategy, mode)
        ]
        assert wire == sorted(wire)
        assert wire[0] == 0


@pytest.mark.slow
def test_strong_scaling_er_50k(tmp_path) -> None:
    plan = _plan(
        graph=GeneratorSpec(family=GraphFamily.ERDOS_RENYI, n=50_000, seed=2024),
        ranks=[1, 2, 4, 8],
        output=tmp_path / "er.csv",
    )

    records = runner.run_plan(plan)

    assert read_records(tmp_path / "er.csv") == records
    for strategy, mode in plan.variants():
        wire = [
            r.total_wire_bytes
            for r in records
            if (r.strategy, r.frontier_mode) == (strategy, mode)
        ]
        assert wire == sorted(wire)


def test_graph_file_input(tmp_path) -> None:
    path = tmp_path / "star.txt"
    write_edge_list(generate_star(50), path)

    records = runner.run_plan(_plan(graph_path=path, source=3, ranks=[2]))

    assert {r.family for r in records} == {FILE_FAMILY}
    assert {r.levels_traversed for r in records} == {3}


@pytest.mark.parametrize("content", (None, "3 1\n0 9\n", "2 2\n0 1\n1 0\n"))
def test_unreadable_graph_file(tmp_path, content: str | None) -> None:
    path = tmp_path / "graph.txt"
    if content is not None:
        path.write_text(content)

    with pytest.raises(BenchIOError):
        runner.run_plan(_plan(graph_path=path, ranks=[1]))


def test_source_out_of_range() -> None:
    with pytest.raises(BenchUsageError, match="Source 10 out of range"):
        runner.run_plan(_plan(graph=_star(10), source=10, ranks=[1]))


def test_invalid_generator_parameters() -> None:
    spec = GeneratorSpec(family=GraphFamily.SMALL_WORLD, n=10, ring_degree=3)

    with pytest.raises(BenchUsageError):
        runner.run_plan(_plan(graph=spec, ranks=[1]))


@patch("bfs1d.bench.runner.bfs_serial")
def test_oracle_skipped_above_limit(mock_bfs_serial) -> None:
    records = runner.run_plan(_plan(graph=_star(100), ranks=[2], oracle_limit=99))

    assert len(records) == 4
    mock_bfs_serial.assert_not_called()


def test_oracle_mismatch_aborts_plan(monkeypatch, tmp_path) -> None:
    real_bfs = runner.bfs_distributed

    def off_by_one(*args, **kwargs):
        levels, metrics = real_bfs(*args, **kwargs)
        levels = levels.copy()
        levels[1] += 1
        return levels, metrics

    monkeypatch.setattr(runner, "bfs_distributed", off_by_one)
    output = tmp_path / "results.csv"

    with pytest.raises(BenchCorrectnessError, match="level of vertex 1 is 2"):
        runner.run_plan(_plan(graph=_star(20), ranks=[1, 2], output=output))

    assert not output.exists()


def test_oracle_matches_every_run() -> None:
    plan = _plan(
        graph=GeneratorSpec(family=GraphFamily.ERDOS_RENYI, n=400, seed=8),
        source=11,
        ranks=[3],
    )

    with patch.object(runner, "_verify", wraps=runner._verify) as verify:
        records = runner.run_plan(plan)

    assert verify.call_count == len(records) == 4
    levels = [call.args[1] for call in verify.call_args_list]
    assert all(np.array_equal(levels[0], other) for other in levels[1:])
