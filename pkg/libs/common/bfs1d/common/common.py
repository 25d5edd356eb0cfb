import os

from dotenv import load_dotenv
from loguru import logger


def load_monorepo_dotenv(required: bool = False) -> bool:
    """Loads the .env file from the monorepo root.

    Returns whether a file was loaded. With `required=True` a missing file is an
    error, otherwise it is silently skipped (all settings have defaults).
    """
    from bfs1d.common.config import MONOREPO_ROOT_PATH

    path = MONOREPO_ROOT_PATH / ".env"

    if not path.exists():
        if required:
            raise FileNotFoundError(f"No .env file found: {path}")
        return False

    logger.debug(f"Loading .env file: '{str(path)}'")

    return load_dotenv(path, override=False)


def gitignore_name(name: str) -> str:
    """Converts the name so that it'll be ignored by git."""
    from bfs1d.common.config import MONOREPO_ROOT_PATH

    with open(MONOREPO_ROOT_PATH / ".gitignore", "r") as f:
        if "___*" not in f.read():
            raise ValueError(
                "The gitignore file does not contain expected pattern '___*'"
            )

    return f"___{name}"


def env_int(name: str, default: int) -> int:
    """Reads an integer setting from the environment."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default

    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Env var '{name}' must be an integer, got: '{raw}'") from None


def env_float(name: str, default: float) -> float:
    """Reads a float setting from the environment."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default

    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"Env var '{name}' must be a number, got: '{raw}'") from None
