import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coopifc import ChannelParams  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def ref():
    """P1 = P2 = 6, a^2 = b^2 = 0.3."""
    return ChannelParams(a=math.sqrt(0.3), b=math.sqrt(0.3), p1=6.0, p2=6.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
