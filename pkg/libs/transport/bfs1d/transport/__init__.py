from bfs1d.transport.base import Endpoint
from bfs1d.transport.config import Backend
from bfs1d.transport.counters import TransportCounters
from bfs1d.transport.errors import (
    CollectiveMisuseError,
    InvalidPeerError,
    TransportError,
    TransportTimeoutError,
    WorldError,
    WorldShutdownError,
)
from bfs1d.transport.message import VertexMessage
from bfs1d.transport.world import WorldConfig, spawn_world

__all__ = [
    "Backend",
    "CollectiveMisuseError",
    "Endpoint",
    "InvalidPeerError",
    "TransportCounters",
    "TransportError",
    "TransportTimeoutError",
    "VertexMessage",
    "WorldConfig",
    "WorldError",
    "WorldShutdownError",
    "spawn_world",
]
