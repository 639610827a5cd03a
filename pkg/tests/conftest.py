from pathlib import Path

import pytest

from branchcurve.fields import QQ, PrimeField
from branchcurve.parsing import parse_polynomial

DATA = Path(__file__).parent / "data"

XYZ = ("x", "y", "z")
XY = ("x", "y")


def poly(text, variables=("x0", "x1", "x2", "x3"), domain=QQ):
    return parse_polynomial(text, variables, domain)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def F101():
    return PrimeField(101)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
