from __future__ import annotations

from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Iterator, Sequence

import numpy as np
from bfs1d.transport.counters import TransportCounters
from bfs1d.transport.errors import (
    CollectiveMisuseError,
    InvalidPeerError,
    TransportError,
    TransportTimeoutError,
)
from bfs1d.transport.message import VertexMessage

# Rank that collects control values (barrier, allreduce, root agreement).
_CONTROL_ROOT = 0


class Endpoint(ABC):
    """A rank's handle to the message-passing world.

    Backends implement the two raw point-to-point primitives; every collective
    is built on top of them with root-centric star patterns, so all backends
    move the same frames in the same order. Delivery between a fixed pair of
    ranks is FIFO and sends never wait for the receiver.
    """

    def __init__(self, rank: int, size: int, timeout_s: float):
        self.rank = rank
        self.size = size
        self.timeout_s = timeout_s
        self.counters = TransportCounters()

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(rank={self.rank}, size={self.size})"

    @abstractmethod
    def _post(self, to: int, payload: bytes) -> None:
        """Enqueues an encoded message for rank `to`; never blocks on the receiver."""

    @abstractmethod
    def _take(self, source: int, timeout_s: float) -> bytes:
        """Returns the next encoded message from `source`.

        Raises `TransportTimeoutError` after `timeout_s` seconds and
        `WorldShutdownError` once the world is torn down.
        """

    def close(self) -> None:
        """Releases backend resources."""

    def _check_peer(self, peer: int, what: str) -> int:
        if not 0 <= peer < self.size:
            raise InvalidPeerError(f"{what} rank {peer} out of range [0, {self.size})")
        if peer == self.rank:
            raise InvalidPeerError(f"Rank {self.rank} cannot {what.lower()} itself")
        return peer

    def _check_root(self, root: int) -> int:
        if not 0 <= root < self.size:
            raise InvalidPeerError(f"Root rank {root} out of range [0, {self.size})")
        return root

    def _others(self) -> Iterator[int]:
        return (r for r in range(self.size) if r != self.rank)

    def _send_raw(self, to: int, msg: VertexMessage) -> None:
        self._post(to, msg.to_bytes())

    def _recv_raw(self, source: int) -> VertexMessage:
        return VertexMessage.from_bytes(self._take(source, self.timeout_s))

    @contextmanager
    def _collective(self, name: str) -> Iterator[None]:
        try:
            yield
        except CollectiveMisuseError:
            raise
        except TransportTimeoutError as e:
            raise CollectiveMisuseError(
                f"Rank {self.rank}: collective '{name}' did not complete within "
                f"{self.timeout_s}s; not all ranks entered it consistently ({e})"
            ) from None

    def _allgather_control(self, value: int) -> list[int]:
        """Uncounted all-gather of one non-negative integer per rank."""
        if self.size == 1:
            return [value]

        if self.rank == _CONTROL_ROOT:
            values = [0] * self.size
            values[self.rank] = value
            for source in self._others():
                values[source] = int(self._recv_raw(source).vertices[0])
            for to in self._others():
                self._send_raw(to, VertexMessage(0, values))
            return values

        self._send_raw(_CONTROL_ROOT, VertexMessage(0, [value]))
        return self._recv_raw(_CONTROL_ROOT).vertices.tolist()

    def _agree(self, name: str, value: int) -> None:
        values = self._allgather_control(value)
        if len(set(values)) != 1:
            raise CollectiveMisuseError(
                f"Rank {self.rank}: ranks disagree on the root of '{name}': {values}"
            )

    def send(self, to: int, msg: VertexMessage) -> None:
        self._check_peer(to, "Send to")
        self._send_raw(to, msg)
        self.counters.record_sent(msg.nbytes)

    def recv(self, source: int) -> VertexMessage:
        self._check_peer(source, "Receive from")
        msg = self._recv_raw(source)
        self.counters.record_received(msg.nbytes)
        return msg

    def exchange_all(self, outgoing: Sequence[VertexMessage]) -> list[VertexMessage]:
        """All-to-all exchange of per-destination buffers.

        Models the aggregate-then-exchange collective: the non-empty remote
        buffers are first merged into one buffer (counted as aggregation-copy
        bytes), then delivered. Only non-empty buffers count as wire traffic.
        """
        if len(outgoing) != self.size:
            raise InvalidPeerError(
                f"exchange_all needs {self.size} buffers, got {len(outgoing)}"
            )
        if len(outgoing[self.rank]):
            raise TransportError(
                f"Rank {self.rank}: self-addressed buffer must be empty in exchange_all"
            )

        with self._collective("exchange_all"):
            self.counters.aggregation_copy_bytes += sum(
                outgoing[to].nbytes for to in self._others() if len(outgoing[to])
            )

            for to in self._others():
                msg = outgoing[to]
                self._send_raw(to, msg)
                if len(msg):
                    self.counters.record_sent(msg.nbytes)

            incoming = [VertexMessage.empty(outgoing[self.rank].level)] * self.size
            for source in self._others():
                msg = self._recv_raw(source)
                if len(msg):
                    self.counters.record_received(msg.nbytes)
                incoming[source] = msg

        return incoming

    def gather_to_root(self, contribution: VertexMessage, root: int) -> VertexMessage:
        """Concatenates every rank's contribution at `root`, in rank order."""
        self._check_root(root)
        with self._collective("gather_to_root"):
            self._agree("gather_to_root", root)

            if self.rank != root:
                self._send_raw(root, contribution)
                self.counters.record_sent(contribution.nbytes)
                return VertexMessage.empty(contribution.level)

            parts = [contribution.vertices] * self.size
            for source in self._others():
                msg = self._recv_raw(source)
                self.counters.record_received(msg.nbytes)
                if msg.level != contribution.level:
                    raise CollectiveMisuseError(
                        f"Rank {source} contributed level {msg.level} to a gather "
                        f"of level {contribution.level}"
                    )
                parts[source] = msg.vertices

        return VertexMessage(contribution.level, np.concatenate(parts))

    def broadcast(self, msg: VertexMessage | None, root: int) -> VertexMessage:
        """Every rank returns the root's message."""
        self._check_root(root)
        with self._collective("broadcast"):
            self._agree("broadcast", root)

            if self.rank == root:
                if msg is None:
                    raise TransportError(f"Root rank {root} must provide a message")
                for to in self._others():
                    self._send_raw(to, msg)
                    self.counters.record_sent(msg.nbytes)
                return msg

            received = self._recv_raw(root)
            self.counters.record_received(received.nbytes)
            return received

    def allreduce_sum(self, value: int) -> int:
        if value < 0:
            raise ValueError(f"allreduce_sum takes non-negative values, got {value}")
        with self._collective("allreduce_sum"):
            return sum(self._allgather_control(int(value)))

    def barrier(self) -> None:
        with self._collective("barrier"):
            self._allgather_control(0)
