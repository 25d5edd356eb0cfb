from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace


@dataclass
class TransportCounters:
    """Per-rank traffic accounting.

    Byte counts are logical serialized message sizes, identical for every
    backend. Control traffic of `barrier` and `allreduce_sum` is not counted.
    """

    bytes_sent: int = 0
    bytes_received: int = 0
    messages_sent: int = 0
    messages_received: int = 0
    aggregation_copy_bytes: int = 0

    def record_sent(self, nbytes: int, messages: int = 1) -> None:
        self.bytes_sent += nbytes
        self.messages_sent += messages

    def record_received(self, nbytes: int, messages: int = 1) -> None:
        self.bytes_received += nbytes
        self.messages_received += messages

    def snapshot(self) -> TransportCounters:
        return replace(self)

    def __sub__(self, other: TransportCounters) -> TransportCounters:
        return TransportCounters(
            **{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)}
        )

    def __add__(self, other: TransportCounters) -> TransportCounters:
        return TransportCounters(
            **{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)}
        )

    def as_dict(self) -> dict[str, int]:
        return asdict(self)
