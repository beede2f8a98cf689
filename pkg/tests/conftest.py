"""Shared fixtures: the standard fields and the three-configuration matrix."""

import pytest

from quadcodes import PairSpaceCtx, QuadForm, make_field

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def F3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F27():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def F5():
    return make_field(5, 1)


def make_matrix_configs():
    """The three reference (f, g) pairs used throughout the acceptance checks.

    1. p=3, s1=s2=1: f = x^2, g = 2y^2          (s=2, R=2, eps=-1)
    2. p=3, s1=2, s2=1: f = Tr(x^2), g = y^2    (s=3, R=3, eps=-1)
    3. p=3, s1=s2=2: f = Tr(x^2), g = diag(1,1) (s=4, R=4, eps=-1)
    """
    F3 = make_field(3, 1)
    F9 = make_field(3, 2)
    tr_sq = QuadForm.from_trace_poly(F9, [[1, 0]])
    return [
        (QuadForm(F3, [[1]]), QuadForm(F3, [[2]])),
        (tr_sq, QuadForm(F3, [[1]])),
        (tr_sq, QuadForm(F9, [[1, 0], [0, 1]])),
    ]


@pytest.fixture(scope="session")
def matrix_configs():
    return make_matrix_configs()


@pytest.fixture(scope="session")
def matrix_contexts(matrix_configs):
    return [(f, g, PairSpaceCtx(f.field, g.field)) for f, g in matrix_configs]
