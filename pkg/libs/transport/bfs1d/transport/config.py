from enum import Enum

from bfs1d.common.common import env_float, env_int
from bfs1d.common.config import EnvVars

DEFAULT_WORLD_TIMEOUT_S = 30.0

# How often blocked receivers re-check the world shutdown flag.
POLL_INTERVAL_S = 0.05

# Time given to surviving socket ranks to observe a failure before termination.
SHUTDOWN_GRACE_S = 1.0

DEFAULT_SOCKET_HOST = "127.0.0.1"


class Backend(str, Enum):
    IN_PROCESS = "in_process"
    SOCKET = "socket"


def world_timeout_s() -> float:
    return env_float(EnvVars.WORLD_TIMEOUT_S, DEFAULT_WORLD_TIMEOUT_S)


def socket_base_port() -> int:
    return env_int(EnvVars.SOCKET_BASE_PORT, 0)
