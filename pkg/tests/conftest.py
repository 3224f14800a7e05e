from fractions import Fraction

import pytest

from panchroma.hypergraph import Hypergraph


def single_edge():
    return Hypergraph(2, 2, ((0, 1),))


def path3():
    # e = {v1, v2}, f = {v2, v3}
    return Hypergraph(2, 3, ((0, 1), (1, 2)))


def triangle():
    return Hypergraph(2, 3, ((0, 1), (1, 2), (0, 2)))


# (name, hypergraph, r, p) used by the Monte Carlo / structural checks
FIXTURES = [
    ("single-edge", single_edge(), 2, Fraction(1, 5)),
    ("path3", path3(), 2, Fraction(1, 5)),
    ("triangle", triangle(), 2, Fraction(1, 10)),
    ("star4", Hypergraph(2, 5, ((0, 1), (0, 2), (0, 3), (0, 4))), 2, Fraction(1, 5)),
    ("single-edge-r3", single_edge(), 3, Fraction(1, 5)),
    ("3-uniform-r2", Hypergraph(3, 5, ((0, 1, 2), (2, 3, 4), (0, 3, 4))), 2, Fraction(1, 5)),
    ("3-uniform-r3", Hypergraph(3, 5, ((0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 1, 4))), 3, Fraction(1, 5)),
    ("path-r3", Hypergraph(2, 4, ((0, 1), (1, 2), (2, 3))), 3, Fraction(1, 10)),
]


@pytest.fixture
def edge():
    return single_edge()


@pytest.fixture
def fork():
    return path3()


@pytest.fixture
def tri():
    return triangle()


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
