import os
import sys

from bfs1d.common.config import DEFAULT_LOG_LEVEL, EnvVars
from loguru import logger

LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>rank={extra[rank]}</cyan> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


def setup_logging(level: str | None = None) -> str:
    """Replaces loguru's default sink with a stderr sink at the given level.

    The level falls back to the `BFS1D_LOG_LEVEL` env var. Records logged outside
    a rank context show `rank=-`.
    """
    level = (level or os.getenv(EnvVars.LOG_LEVEL) or DEFAULT_LOG_LEVEL).upper()

    logger.remove()
    logger.configure(extra={"rank": "-"})
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)

    return level
