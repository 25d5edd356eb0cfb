"""CSV result rows: one record per (rank count, strategy, frontier mode, repetition)."""
from __future__ import annotations

import csv
import os
import tempfile
from pathlib import Path

from bfs1d.bench.config import ScalingMode
from bfs1d.bench.errors import BenchIOError
from bfs1d.core.config import FrontierMode, Strategy
from bfs1d.transport import Backend
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

TIMING_FIELDS = ("compute_ns", "comm_ns", "total_ns")


class BenchRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: ScalingMode
    family: str
    n: int = Field(ge=0)
    edges: int = Field(ge=0)
    p: int = Field(ge=1)
    strategy: Strategy
    frontier_mode: FrontierMode
    backend: Backend
    repetition: int = Field(ge=0)
    levels_traversed: int = Field(ge=0)
    total_wire_bytes: int = Field(ge=0)
    total_messages: int = Field(ge=0)
    aggregation_copy_bytes: int = Field(ge=0)
    shortcircuit_hits: int = Field(ge=0)
    compute_ns: int = Field(ge=0)
    comm_ns: int = Field(ge=0)
    total_ns: int = Field(ge=0)

    @classmethod
    def header(cls) -> list[str]:
        return list(cls.model_fields)

    def to_row(self) -> dict[str, str | int]:
        return self.model_dump(mode="json")

    def without_timings(self) -> dict:
        return self.model_dump(exclude=set(TIMING_FIELDS))


def write_records(records: list[BenchRecord], path: Path | str) -> Path:
    """Writes the CSV atomically: a temp file in the target directory, then rename."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            prefix=f".{path.name}.", suffix=".tmp", dir=path.parent
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=BenchRecord.header())
                writer.writeheader()
                for record in records:
                    writer.writerow(record.to_row())
            os.replace(tmp_name, path)
        except BaseException:
            Path(tmp_name).unlink(missing_ok=True)
            raise
    except OSError as e:
        raise BenchIOError(f"Cannot write results to '{path}': {e}") from None

    logger.info(f"Results written: '{path}' ({len(records)} records)")
    return path


def read_records(path: Path | str) -> list[BenchRecord]:
    """Parses a results CSV written by `write_records`."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != BenchRecord.header():
                raise BenchIOError(
                    f"Unexpected CSV header in '{path}': {reader.fieldnames}"
                )
            rows = list(reader)
    except OSError as e:
        raise BenchIOError(f"Cannot read results from '{path}': {e}") from None

    records = []
    for line_no, row in enumerate(rows, start=2):
        try:
            records.append(BenchRecord.model_validate(row))
        except ValidationError as e:
            raise BenchIOError(f"{path}:{line_no}: invalid record: {e}") from None
    return records
