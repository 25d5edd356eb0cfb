from __future__ import annotations

import ipaddress
import os
import socket
from typing import Any, Callable

from bfs1d.common.config import EnvVars
from bfs1d.transport.base import Endpoint
from bfs1d.transport.config import (
    DEFAULT_SOCKET_HOST,
    Backend,
    socket_base_port,
    world_timeout_s,
)
from bfs1d.transport.in_process import run_in_process_world
from bfs1d.transport.socket_backend import Address, run_socket_world
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

RankMain = Callable[[Endpoint], Any]


def _is_loopback(host: str) -> bool:
    try:
        return ipaddress.ip_address(socket.gethostbyname(host)).is_loopback
    except (OSError, ValueError):
        return False


def default_addresses(p: int) -> list[Address]:
    """Local address list; base port 0 lets every rank take an ephemeral port."""
    host = os.getenv(EnvVars.SOCKET_HOST, DEFAULT_SOCKET_HOST)
    base_port = socket_base_port()
    return [(host, base_port + rank if base_port else 0) for rank in range(p)]


class WorldConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1, description="Rank count.")
    backend: Backend = Backend.IN_PROCESS
    addresses: list[tuple[str, int]] | None = Field(
        default=None,
        description=(
            "Listen address per rank (socket backend). All ranks are forked on this "
            "machine, so hosts must be loopback; multi-host runs call "
            "`run_socket_rank` once per host instead."
        ),
    )
    timeout_s: float = Field(
        default_factory=world_timeout_s,
        gt=0,
        description="Receive timeout; exceeding it inside a collective is misuse.",
    )

    @model_validator(mode="after")
    def _check_addresses(self) -> WorldConfig:
        if self.addresses is not None and len(self.addresses) != self.p:
            raise ValueError(
                f"Socket address list must have {self.p} entries, "
                f"got {len(self.addresses)}"
            )
        for host, _ in self.addresses or ():
            if not _is_loopback(host):
                raise ValueError(
                    f"Socket host '{host}' is not a loopback address; "
                    "spawn_world runs every rank on this machine"
                )
        return self

    def socket_addresses(self) -> list[Address]:
        if self.addresses is not None:
            return [tuple(address) for address in self.addresses]
        return default_addresses(self.p)


def spawn_world(config: WorldConfig, rank_main: RankMain) -> list[Any]:
    """Runs `rank_main(endpoint)` once per rank and returns results in rank order.

    Raises `WorldError` naming the failing rank(s) if any rank fails; the other
    ranks are unblocked with `WorldShutdownError` and torn down.
    """
    logger.debug(f"Spawning {config.backend.value} world of {config.p} rank(s)")

    if config.backend == Backend.IN_PROCESS:
        return run_in_process_world(config.p, rank_main, config.timeout_s)
    elif config.backend == Backend.SOCKET:
        return run_socket_world(config.socket_addresses(), rank_main, config.timeout_s)
    else:
        raise ValueError(f"Unknown backend: {config.backend}")
