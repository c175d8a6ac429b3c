import pytest

from signsum import INTEGERS, Subset, parse_group


def make(group, *elements):
    g = parse_group(group) if isinstance(group, str) else group
    return Subset(g, elements)


@pytest.fixture
def Z():
    return INTEGERS


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
