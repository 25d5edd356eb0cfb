import pytest
from bfs1d.common.common import load_monorepo_dotenv
from bfs1d.common.logs import setup_logging

load_monorepo_dotenv()
setup_logging("WARNING")

SOCKET_RERUNS = 2


def pytest_collection_modifyitems(items):
    """Multi-process socket worlds depend on free local ports; give them reruns."""
    for item in items:
        if "socket" in item.keywords:
            item.add_marker(pytest.mark.flaky(reruns=SOCKET_RERUNS))
