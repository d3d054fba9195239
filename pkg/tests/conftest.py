"""Shared paths, fixture data and the acceptance-line reporter."""

import contextlib
import math
import pathlib

from condet import FLOAT, Matrix
from condet.cli import load_matrix

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
DOCS = REPO_ROOT / "docs"

GOLDEN_PATH = FIXTURES / "golden_7x7.txt"

# Condensation of the golden 7x7 at pivot (1,1), worked by hand from the
# fixture entries: entry (i,j) is a(1,1)*a(i+1,j+1) - a(1,j+1)*a(i+1,1).
GOLDEN_CONDENSED = [
    [2, 6, 16, 16, 2, 10],
    [-37, -22, -47, -36, 7, -6],
    [-19, -20, 2 * math.sqrt(3) - 49, -38, -7, 2],
    [-51, -34, -69, -56, -10, -12],
    [-11, -4, -23, -28, -5, 0],
    [-41, -30, -53, -38, 1, -12],
]

GOLDEN_FACTOR = 32  # a(1,1) ** (7 - 2) = 2 ** 5


def golden_matrix() -> Matrix:
    return load_matrix(str(GOLDEN_PATH), FLOAT)


# One pass/fail line per acceptance criterion, shown even under pytest's
# output capture via the terminal summary section below.
ACCEPTANCE_LINES = []


@contextlib.contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        line = f"[criterion {number:2d}] FAIL  {description}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"[criterion {number:2d}] PASS  {description}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
