from __future__ import annotations

from dataclasses import dataclass, field, fields


@dataclass
class LevelRecord:
    """Counters of one BFS superstep.

    Per-rank records are merged across ranks by summing the counters and taking
    the maximum of the timings (the slowest rank bounds the superstep).
    """

    level: int
    frontier_size_global: int = 0
    wire_bytes: int = 0
    wire_bytes_received: int = 0
    messages: int = 0
    aggregation_copy_bytes: int = 0
    local_shortcircuit_hits: int = 0
    self_buffered_vertices: int = 0
    compute_ns: int = 0
    comm_ns: int = 0
    elapsed_nanoseconds: int = 0

    _TIMINGS = ("compute_ns", "comm_ns", "elapsed_nanoseconds")

    def merge(self, other: LevelRecord) -> LevelRecord:
        if other.level != self.level:
            raise ValueError(f"Cannot merge level {other.level} into level {self.level}")

        merged = {}
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if f.name == "level":
                merged[f.name] = a
            elif f.name in self._TIMINGS:
                merged[f.name] = max(a, b)
            else:
                merged[f.name] = a + b
        return LevelRecord(**merged)


@dataclass
class RunMetrics:
    """Per-level records of one distributed BFS run, plus run totals."""

    levels: list[LevelRecord] = field(default_factory=list)

    @classmethod
    def merge_ranks(cls, per_rank: list[list[LevelRecord]]) -> RunMetrics:
        """Merges each rank's level records (all ranks run the same supersteps)."""
        depth = {len(records) for records in per_rank}
        if len(depth) != 1:
            raise ValueError(f"Ranks ran different numbers of supersteps: {sorted(depth)}")

        merged = []
        for level_records in zip(*per_rank):
            record = level_records[0]
            for other in level_records[1:]:
                record = record.merge(other)
            merged.append(record)
        return cls(merged)

    def _total(self, name: str) -> int:
        return sum(getattr(record, name) for record in self.levels)

    @property
    def levels_traversed(self) -> int:
        return len(self.levels)

    @property
    def total_wire_bytes(self) -> int:
        return self._total("wire_bytes")

    @property
    def total_wire_bytes_received(self) -> int:
        return self._total("wire_bytes_received")

    @property
    def total_messages(self) -> int:
        return self._total("messages")

    @property
    def aggregation_copy_bytes(self) -> int:
        return self._total("aggregation_copy_bytes")

    @property
    def shortcircuit_hits(self) -> int:
        return self._total("local_shortcircuit_hits")

    @property
    def self_buffered_vertices(self) -> int:
        return self._total("self_buffered_vertices")

    @property
    def compute_ns(self) -> int:
        return self._total("compute_ns")

    @property
    def comm_ns(self) -> int:
        return self._total("comm_ns")

    @property
    def total_ns(self) -> int:
        return self._total("elapsed_nanoseconds")

    def totals(self) -> dict[str, int]:
        return {
            "levels_traversed": self.levels_traversed,
            "total_wire_bytes": self.total_wire_bytes,
            "total_messages": self.total_messages,
            "aggregation_copy_bytes": self.aggregation_copy_bytes,
            "shortcircuit_hits": self.shortcircuit_hits,
            "compute_ns": self.compute_ns,
            "comm_ns": self.comm_ns,
            "total_ns": self.total_ns,
        }
