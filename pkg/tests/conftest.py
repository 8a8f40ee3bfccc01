from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hyperflow.poly import Coordinate, Polynomial

ACCEPTANCE_LINES = []

coordinates = st.builds(
    Coordinate,
    st.sampled_from((1, 2, 3)),
    st.sampled_from((1, 3, 5, 7)),
)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)

monomials = st.dictionaries(coordinates, st.integers(min_value=1, max_value=3), max_size=3).map(
    lambda d: tuple(sorted(d.items()))
)

polynomials = st.dictionaries(monomials, rationals, max_size=4).map(Polynomial)

assignments = st.dictionaries(coordinates, rationals, max_size=6)


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion; printed at session end."""

    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}{'  -- ' + detail if detail else ''}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
