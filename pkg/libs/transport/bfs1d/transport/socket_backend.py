"""TCP full-mesh backend: one OS process per rank, one socket per rank pair.

Every rank listens on its address from a static list. Rank r connects to all
lower ranks and accepts connections from all higher ranks; a connection opens
with an 8-byte handshake carrying the connecting rank id. A reader thread per
peer drains frames into a FIFO, so senders never wait for the receiving rank.
"""
from __future__ import annotations

import multiprocessing as mp
import queue
import socket
import struct
import threading
import time
import traceback
from typing import Any, Callable, Sequence

from bfs1d.transport.base import Endpoint
from bfs1d.transport.config import POLL_INTERVAL_S, SHUTDOWN_GRACE_S
from bfs1d.transport.errors import (
    RankFailure,
    TransportError,
    TransportTimeoutError,
    WorldError,
    WorldShutdownError,
)
from bfs1d.transport.message import (
    FRAME_HEADER_BYTES,
    ID_BYTES,
    decode_frame_header,
    encode_frame,
)
from loguru import logger

Address = tuple[str, int]

_HANDSHAKE = struct.Struct("<Q")
_CLOSED = object()
_CONNECT_RETRY_S = 0.05


def _recv_exact(sock: socket.socket, nbytes: int) -> bytes | None:
    chunks, remaining = [], nbytes
    while remaining:
        chunk = sock.recv(min(remaining, 1 << 20))
        if not chunk:
            return None
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def bind_listener(address: Address) -> socket.socket:
    """Binds and listens; port 0 picks an ephemeral port."""
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind(address)
    sock.listen()
    return sock


class SocketEndpoint(Endpoint):
    def __init__(
        self,
        rank: int,
        addresses: Sequence[Address],
        timeout_s: float,
        listener: socket.socket | None = None,
    ):
        super().__init__(rank, len(addresses), timeout_s)
        self._addresses = list(addresses)
        self._listener = listener or bind_listener(self._addresses[rank])
        self._peers: dict[int, socket.socket] = {}
        self._send_locks: dict[int, threading.Lock] = {}
        self._inbox: dict[int, queue.SimpleQueue] = {}
        self._closed = threading.Event()

        self._connect_mesh()
        for peer, sock in self._peers.items():
            self._send_locks[peer] = threading.Lock()
            self._inbox[peer] = queue.SimpleQueue()
            threading.Thread(
                target=self._read_loop,
                args=(peer, sock),
                name=f"rank-{rank}-reader-{peer}",
                daemon=True,
            ).start()

    def _connect(self, peer: int) -> socket.socket:
        deadline = time.monotonic() + self.timeout_s
        while True:
            try:
                sock = socket.create_connection(self._addresses[peer], timeout=self.timeout_s)
                break
            except OSError as e:
                if time.monotonic() >= deadline:
                    raise TransportTimeoutError(
                        f"Rank {self.rank}: cannot connect to rank {peer} at "
                        f"{self._addresses[peer]}: {e}"
                    ) from None
                time.sleep(_CONNECT_RETRY_S)

        sock.sendall(_HANDSHAKE.pack(self.rank))
        return sock

    def _connect_mesh(self) -> None:
        for peer in range(self.rank):
            self._peers[peer] = self._connect(peer)

        self._listener.settimeout(self.timeout_s)
        for _ in range(self.rank + 1, self.size):
            try:
                sock, _ = self._listener.accept()
            except socket.timeout:
                raise TransportTimeoutError(
                    f"Rank {self.rank}: higher ranks did not connect in {self.timeout_s}s"
                ) from None
            sock.settimeout(self.timeout_s)
            handshake = _recv_exact(sock, _HANDSHAKE.size)
            if handshake is None:
                raise TransportError(f"Rank {self.rank}: peer closed during handshake")
            (peer,) = _HANDSHAKE.unpack(handshake)
            if not self.rank < peer < self.size or peer in self._peers:
                raise TransportError(f"Rank {self.rank}: unexpected handshake from {peer}")
            self._peers[peer] = sock

        for sock in self._peers.values():
            sock.settimeout(None)
            sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)

        logger.debug(f"Rank {self.rank}: mesh of {len(self._peers)} peers connected")

    def _read_loop(self, peer: int, sock: socket.socket) -> None:
        inbox = self._inbox[peer]
        try:
            while True:
                header = _recv_exact(sock, FRAME_HEADER_BYTES)
                if header is None:
                    break
                dest, level, count = decode_frame_header(header)
                body = _recv_exact(sock, ID_BYTES * count) if count else b""
                if body is None:
                    break
                if dest != self.rank:
                    logger.error(f"Rank {self.rank}: frame for rank {dest} from {peer}")
                    break
                inbox.put(header[8:] + body)
        except OSError:
            pass
        inbox.put(_CLOSED)

    def _post(self, to: int, payload: bytes) -> None:
        if self._closed.is_set():
            raise WorldShutdownError(f"Rank {self.rank}: endpoint closed")
        try:
            with self._send_locks[to]:
                self._peers[to].sendall(encode_frame(to, payload))
        except OSError as e:
            raise WorldShutdownError(
                f"Rank {self.rank}: connection to rank {to} lost: {e}"
            ) from None

    def _take(self, source: int, timeout_s: float) -> bytes:
        inbox = self._inbox[source]
        deadline = time.monotonic() + timeout_s

        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TransportTimeoutError(
                    f"Rank {self.rank}: no message from rank {source} in {timeout_s}s"
                )
            try:
                item = inbox.get(timeout=min(POLL_INTERVAL_S, remaining))
            except queue.Empty:
                continue
            if item is _CLOSED:
                inbox.put(_CLOSED)
                raise WorldShutdownError(
                    f"Rank {self.rank}: connection to rank {source} closed"
                )
            return item

    def close(self) -> None:
        if self._closed.is_set():
            return
        self._closed.set()
        for sock in self._peers.values():
            try:
                sock.shutdown(socket.SHUT_RDWR)
            except OSError:
                pass
            sock.close()
        self._listener.close()


def run_socket_rank(
    rank: int,
    addresses: Sequence[Address],
    rank_main: Callable[[Endpoint], Any],
    timeout_s: float,
    listener: socket.socket | None = None,
) -> Any:
    """Runs a single rank against a static address list (one call per host/process)."""
    endpoint = SocketEndpoint(rank, addresses, timeout_s, listener=listener)
    try:
        with logger.contextualize(rank=rank):
            return rank_main(endpoint)
    finally:
        endpoint.close()


def _child_main(
    rank: int,
    addresses: list[Address],
    listeners: list[socket.socket],
    rank_main: Callable[[Endpoint], Any],
    timeout_s: float,
    results: mp.Queue,
) -> None:
    for idx, listener in enumerate(listeners):
        if idx != rank:
            listener.close()

    try:
        result = run_socket_rank(rank, addresses, rank_main, timeout_s, listeners[rank])
        results.put((rank, True, result))
    except BaseException as e:  # noqa: B036
        failure = RankFailure(rank, type(e).__name__, str(e), traceback.format_exc())
        results.put((rank, False, failure))


def _lost_ranks(
    processes: list[mp.Process], pending: set[int], exited_at: dict[int, float]
) -> list[int]:
    """Pending ranks whose process exited and whose result never arrived.

    A result put right before exit may still be in the queue pipe, so an exited
    rank is only declared lost after the shutdown grace period.
    """
    now = time.monotonic()
    for rank in pending:
        if processes[rank].exitcode is not None:
            exited_at.setdefault(rank, now)
    return sorted(
        rank
        for rank, since in exited_at.items()
        if rank in pending and now - since >= SHUTDOWN_GRACE_S
    )


def run_socket_world(
    addresses: Sequence[Address],
    rank_main: Callable[[Endpoint], Any],
    timeout_s: float,
) -> list[Any]:
    """Forks one process per rank and connects them into a TCP full mesh.

    Listeners are bound here, before forking, so port 0 entries resolve to
    ephemeral ports known to every rank. `rank_main` and its results cross the
    process boundary: results must be picklable.
    """
    listeners = [bind_listener(address) for address in addresses]
    resolved = [listener.getsockname()[:2] for listener in listeners]
    size = len(resolved)
    logger.debug(f"Socket world addresses: {resolved}")

    ctx = mp.get_context("fork")
    results_queue = ctx.Queue()
    processes = [
        ctx.Process(
            target=_child_main,
            args=(rank, resolved, listeners, rank_main, timeout_s, results_queue),
            name=f"rank-{rank}",
            daemon=True,
        )
        for rank in range(size)
    ]
    for process in processes:
        process.start()
    for listener in listeners:
        listener.close()

    results: list[Any] = [None] * size
    failures: list[RankFailure] = []
    pending = set(range(size))
    # A rank runs as long as it needs; only a failure starts the shutdown clock.
    shutdown_at: float | None = None
    exited_at: dict[int, float] = {}

    try:
        while pending:
            if shutdown_at is not None and time.monotonic() >= shutdown_at:
                break
            try:
                rank, ok, payload = results_queue.get(timeout=POLL_INTERVAL_S)
            except queue.Empty:
                lost = _lost_ranks(processes, pending, exited_at)
                for rank in lost:
                    pending.discard(rank)
                    failures.append(
                        RankFailure(
                            rank,
                            "RankExitError",
                            f"rank process exited with code "
                            f"{processes[rank].exitcode} before reporting a result",
                        )
                    )
                    logger.error(f"Rank {rank} exited without reporting a result")
                if lost and shutdown_at is None:
                    shutdown_at = time.monotonic() + SHUTDOWN_GRACE_S
                continue

            pending.discard(rank)
            if ok:
                results[rank] = payload
                continue
            failures.append(payload)
            if not payload.is_shutdown:
                logger.error(
                    f"Rank {rank} failed: {payload.error_type}: {payload.message}"
                )
            if shutdown_at is None:
                shutdown_at = time.monotonic() + SHUTDOWN_GRACE_S
    finally:
        for rank, process in enumerate(processes):
            if rank in pending and process.is_alive():
                process.terminate()
        for process in processes:
            process.join(timeout=5)

    for rank in sorted(pending):
        failures.append(
            RankFailure(
                rank,
                WorldShutdownError.__name__,
                "rank terminated before reporting a result",
            )
        )

    if failures:
        raise WorldError(sorted(failures, key=lambda f: f.rank))

    return results
