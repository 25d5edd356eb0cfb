from pathlib import Path

from bfs1d.common.common import gitignore_name

MONOREPO_ROOT_PATH = Path(__file__).resolve().parent.parent.parent.parent.parent

MONOREPO_DATA_PATH = MONOREPO_ROOT_PATH / gitignore_name("data")


class EnvVars:
    LOG_LEVEL = "BFS1D_LOG_LEVEL"
    WORLD_TIMEOUT_S = "BFS1D_WORLD_TIMEOUT_S"
    ORACLE_LIMIT = "BFS1D_ORACLE_LIMIT"
    SOCKET_HOST = "BFS1D_SOCKET_HOST"
    SOCKET_BASE_PORT = "BFS1D_SOCKET_BASE_PORT"


DEFAULT_LOG_LEVEL = "INFO"
