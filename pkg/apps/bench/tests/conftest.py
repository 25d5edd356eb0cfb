import pytest
from bfs1d.bench.config import ScalingMode
from bfs1d.bench.records import BenchRecord
from bfs1d.common.common import load_monorepo_dotenv
from bfs1d.common.logs import setup_logging
from bfs1d.core.config import FrontierMode, Strategy
from bfs1d.transport import Backend

load_monorepo_dotenv()
setup_logging("WARNING")


@pytest.fixture(autouse=True)
def quiet_logging():
    """CLI invocations reconfigure logging onto the runner's streams."""
    yield
    setup_logging("WARNING")


@pytest.fixture
def make_record():
    def factory(**overrides) -> BenchRecord:
        fields = dict(
            mode=ScalingMode.STRONG,
            family="star",
            n=100,
            edges=99,
            p=1,
            strategy=Strategy.OPTIMIZED,
            frontier_mode=FrontierMode.DISTRIBUTED,
            backend=Backend.IN_PROCESS,
            repetition=0,
            levels_traversed=2,
            total_wire_bytes=0,
            total_messages=0,
            aggregation_copy_bytes=0,
            shortcircuit_hits=0,
            compute_ns=1_000,
            comm_ns=500,
            total_ns=2_000,
        )
        fields.update(overrides)
        return BenchRecord(**fields)

    return factory
