from enum import Enum
from pathlib import Path

import numpy as np
from bfs1d.common.config import MONOREPO_DATA_PATH

SRC_DIR = Path(__file__).resolve().parent  # 🛠core/bfs1d/core
ROOT_DIR = SRC_DIR.parent.parent  # 🛠core

DATA_DIR = MONOREPO_DATA_PATH / "core"

VERTEX_DTYPE = np.int64

# Reserved level of unreachable (or not yet reached) vertices.
UNVISITED = np.iinfo(np.uint64).max
LEVEL_DTYPE = np.uint64

# Above this vertex count graphs are always generated chunk by chunk.
CHUNKED_GENERATION_THRESHOLD = 1_000_000
DEFAULT_CHUNK_SIZE = 1_000_000

DEFAULT_ER_N = 100_000
DEFAULT_ER_EXPECTED_DEGREE = 16


class GraphFamily(str, Enum):
    STAR = "star"
    ERDOS_RENYI = "erdos_renyi"
    SMALL_WORLD = "small_world"


class Strategy(str, Enum):
    # Aggregate all outgoing buffers, then exchange them collectively.
    BASELINE = "baseline"
    # Update locally owned neighbors immediately, send buffers directly.
    OPTIMIZED = "optimized"


class FrontierMode(str, Enum):
    # Every level's next frontier is merged at rank 0 and broadcast back.
    MASTER_MERGE = "master_merge"
    # Each rank keeps its own next frontier.
    DISTRIBUTED = "distributed"


class MergeTransport(str, Enum):
    COLLECTIVE = "collective"
    PAIRWISE = "pairwise"
