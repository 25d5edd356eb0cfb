from __future__ import annotations

import queue
import threading
import time
import traceback
from typing import Any, Callable

from bfs1d.transport.base import Endpoint
from bfs1d.transport.config import POLL_INTERVAL_S
from bfs1d.transport.errors import (
    RankFailure,
    TransportTimeoutError,
    WorldError,
    WorldShutdownError,
)
from loguru import logger


class InProcessWorld:
    """Channels of one in-process world: an unbounded FIFO per ordered rank pair."""

    def __init__(self, size: int, timeout_s: float):
        self.size = size
        self.timeout_s = timeout_s
        self.shutdown = threading.Event()
        self._channels = {
            (src, dst): queue.SimpleQueue()
            for src in range(size)
            for dst in range(size)
            if src != dst
        }

    def channel(self, src: int, dst: int) -> queue.SimpleQueue:
        return self._channels[(src, dst)]

    def endpoint(self, rank: int) -> InProcessEndpoint:
        return InProcessEndpoint(self, rank)


class InProcessEndpoint(Endpoint):
    def __init__(self, world: InProcessWorld, rank: int):
        super().__init__(rank, world.size, world.timeout_s)
        self._world = world

    def _post(self, to: int, payload: bytes) -> None:
        if self._world.shutdown.is_set():
            raise WorldShutdownError(f"Rank {self.rank}: world is shutting down")
        self._world.channel(self.rank, to).put(payload)

    def _take(self, source: int, timeout_s: float) -> bytes:
        channel = self._world.channel(source, self.rank)
        deadline = time.monotonic() + timeout_s

        while True:
            # Messages already delivered are still handed out during shutdown.
            try:
                return channel.get_nowait()
            except queue.Empty:
                pass

            if self._world.shutdown.is_set():
                raise WorldShutdownError(
                    f"Rank {self.rank}: world shut down while waiting for rank {source}"
                )
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TransportTimeoutError(
                    f"Rank {self.rank}: no message from rank {source} in {timeout_s}s"
                )
            try:
                return channel.get(timeout=min(POLL_INTERVAL_S, remaining))
            except queue.Empty:
                continue


def run_in_process_world(
    size: int, rank_main: Callable[[Endpoint], Any], timeout_s: float
) -> list[Any]:
    """Runs `rank_main` on `size` threads, one endpoint each.

    The first failing rank shuts the world down; blocked peers then fail with
    `WorldShutdownError` and a `WorldError` naming the failing rank is raised.
    """
    world = InProcessWorld(size, timeout_s)
    results: list[Any] = [None] * size
    failures: list[RankFailure] = []
    lock = threading.Lock()

    def run(rank: int) -> None:
        endpoint = world.endpoint(rank)
        with logger.contextualize(rank=rank):
            try:
                results[rank] = rank_main(endpoint)
            except BaseException as e:  # noqa: B036
                failure = RankFailure(
                    rank, type(e).__name__, str(e), traceback.format_exc()
                )
                with lock:
                    failures.append(failure)
                if not failure.is_shutdown:
                    logger.error(f"Rank {rank} failed: {failure.error_type}: {e}")
                world.shutdown.set()
            finally:
                endpoint.close()

    threads = [
        threading.Thread(target=run, args=(rank,), name=f"rank-{rank}", daemon=True)
        for rank in range(size)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    if failures:
        raise WorldError(sorted(failures, key=lambda f: f.rank))

    return results
