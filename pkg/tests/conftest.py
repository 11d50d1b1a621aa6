import pytest

from detic_cr.channel import ChannelParams

SQUARE = ChannelParams(5, 1, 1, 5, 3, 3)
PENTAGON = ChannelParams(4, 0, 0, 2, 3, 6)
ZERO = ChannelParams(0, 0, 0, 0, 0, 0)


@pytest.fixture
def square():
    return SQUARE


@pytest.fixture
def pentagon():
    return PENTAGON


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
