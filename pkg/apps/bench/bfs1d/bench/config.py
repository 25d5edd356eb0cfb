from enum import Enum
from pathlib import Path

from bfs1d.common.common import env_int
from bfs1d.common.config import MONOREPO_DATA_PATH, EnvVars
from bfs1d.core.config import FrontierMode, GraphFamily
from bfs1d.transport import Backend
from loguru import logger

SRC_PATH = Path(__file__).resolve().parent
ROOT_PATH = SRC_PATH.parent.parent

DATA_DIR = MONOREPO_DATA_PATH / "bench"
GRAPHS_DIR = DATA_DIR / "graphs"
RESULTS_DIR = DATA_DIR / "results"

for dir_path in [DATA_DIR, GRAPHS_DIR, RESULTS_DIR]:
    if not dir_path.exists():
        logger.debug(f"Creating directory: `{dir_path}`")
    dir_path.mkdir(exist_ok=True, parents=True)

DEFAULT_REPETITIONS = 3
DEFAULT_ORACLE_LIMIT = 1_000_000
DEFAULT_RESULTS_CSV = RESULTS_DIR / "results.csv"


class ScalingMode(str, Enum):
    """Problem size policy of a benchmark sweep."""

    STRONG = "strong"
    WEAK = "weak"
    SINGLE = "single"


# Short CLI spellings.
FAMILY_ALIASES = {
    "star": GraphFamily.STAR,
    "er": GraphFamily.ERDOS_RENYI,
    "ws": GraphFamily.SMALL_WORLD,
}
FRONTIER_ALIASES = {
    "master": FrontierMode.MASTER_MERGE,
    "distributed": FrontierMode.DISTRIBUTED,
}
BACKEND_ALIASES = {
    "inproc": Backend.IN_PROCESS,
    "socket": Backend.SOCKET,
}

FILE_FAMILY = "file"


def oracle_limit() -> int:
    return env_int(EnvVars.ORACLE_LIMIT, DEFAULT_ORACLE_LIMIT)
