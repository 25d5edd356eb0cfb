"""Fixed-width little-endian codec of vertex messages.

Message layout: [level:8][count:8][ids:8*count]. Socket frames prepend the
destination rank: [dest:8][level:8][count:8][ids:8*count].
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

_HEADER = struct.Struct("<QQ")
_FRAME_HEADER = struct.Struct("<QQQ")

HEADER_BYTES = _HEADER.size
FRAME_HEADER_BYTES = _FRAME_HEADER.size
ID_BYTES = 8

_WIRE_DTYPE = np.dtype("<u8")


@dataclass(frozen=True, eq=False)
class VertexMessage:
    """Vertices discovered for one destination rank at one BFS level."""

    level: int
    vertices: np.ndarray

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=np.int64).reshape(-1)
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def empty(cls, level: int = 0) -> VertexMessage:
        return cls(level, np.zeros(0, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexMessage):
            return NotImplemented
        return self.level == other.level and np.array_equal(self.vertices, other.vertices)

    def __repr__(self) -> str:
        preview = self.vertices[:8].tolist()
        suffix = ", ..." if len(self) > 8 else ""
        return f"VertexMessage(level={self.level}, vertices={preview}{suffix})"

    @property
    def nbytes(self) -> int:
        """Serialized size in bytes."""
        return HEADER_BYTES + ID_BYTES * len(self)

    def to_bytes(self) -> bytes:
        return _HEADER.pack(self.level, len(self)) + self.vertices.astype(
            _WIRE_DTYPE
        ).tobytes()

    @classmethod
    def from_bytes(cls, payload: bytes) -> VertexMessage:
        level, count = _HEADER.unpack_from(payload)
        expected = HEADER_BYTES + ID_BYTES * count
        if len(payload) != expected:
            raise ValueError(
                f"Message of {count} ids must be {expected} bytes, got {len(payload)}"
            )
        ids = np.frombuffer(payload, dtype=_WIRE_DTYPE, offset=HEADER_BYTES)
        return cls(level, ids.astype(np.int64))


def encode_frame(dest: int, payload: bytes) -> bytes:
    """Prefixes an encoded message with its destination rank."""
    return struct.pack("<Q", dest) + payload


def decode_frame_header(header: bytes) -> tuple[int, int, int]:
    """Returns (dest, level, count) of a frame header."""
    return _FRAME_HEADER.unpack(header)
