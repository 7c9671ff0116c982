import sys
from pathlib import Path

import pytest

from qmapwc import CompleteIntersection

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def quintic():
    return CompleteIntersection.parse("4:5")


@pytest.fixture
def cubic_pair():
    return CompleteIntersection.parse("5:3,3")


@pytest.fixture
def quadric3():
    return CompleteIntersection.parse("4:2")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in module.SUMMARY:
            terminalreporter.write_line(line)
