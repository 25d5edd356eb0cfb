import pytest
from bfs1d.bench.errors import BenchIOError
from bfs1d.bench.records import BenchRecord, read_records, write_records

HEADER = (
    "mode,family,n,edges,p,strategy,frontier_mode,backend,repetition,"
    "levels_traversed,total_wire_bytes,total_messages,aggregation_copy_bytes,"
    "shortcircuit_hits,compute_ns,comm_ns,total_ns"
)


def test_header_order() -> None:
    assert ",".join(BenchRecord.header()) == HEADER


def test_csv_round_trip(tmp_path, make_record) -> None:
    records = [
        make_record(p=p, repetition=rep, total_wire_bytes=100 * p, total_ns=rep + 1)
        for p in (1, 2)
        for rep in range(2)
    ]
    path = tmp_path / "out" / "results.csv"

    write_records(records, path)

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 5
    assert lines[1].startswith(
        "strong,star,100,99,1,optimized,distributed,in_process,0,"
    )
    assert read_records(path) == records


def test_write_replaces_existing_file(tmp_path, make_record) -> None:
    path = tmp_path / "results.csv"
    path.write_text("stale", encoding="utf-8")

    write_records([make_record()], path)

    assert read_records(path) == [make_record()]
    assert sorted(p.name for p in tmp_path.iterdir()) == ["results.csv"]


def test_write_failure_leaves_no_temp_file(tmp_path, make_record) -> None:
    target = tmp_path / "taken"
    target.mkdir()

    with pytest.raises(BenchIOError):
        write_records([make_record()], target)

    assert [p.name for p in tmp_path.iterdir()] == ["taken"]


def test_read_missing_file(tmp_path) -> None:
    with pytest.raises(BenchIOError, match="Cannot read results"):
        read_records(tmp_path / "missing.csv")


def test_read_rejects_foreign_header(tmp_path) -> None:
    path = tmp_path / "foreign.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")

    with pytest.raises(BenchIOError, match="Unexpected CSV header"):
        read_records(path)


def test_read_reports_invalid_row(tmp_path, make_record) -> None:
    path = tmp_path / "results.csv"
    write_records([make_record()], path)
    text = path.read_text(encoding="utf-8")
    path.write_text(text + text.splitlines()[1].replace(",2000", ",-5") + "\n")

    with pytest.raises(BenchIOError, match=r"results.csv:3: invalid record"):
        read_records(path)


def test_without_timings(make_record) -> None:
    fields = make_record().without_timings()

    assert "total_ns" not in fields
    assert "compute_ns" not in fields
    assert fields["levels_traversed"] == 2
