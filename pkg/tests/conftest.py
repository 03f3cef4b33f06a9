import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from kslab.catalog import gen_peres_33, gen_single_triad  # noqa: E402
from kslab.geometry import QuadExt  # noqa: E402

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
quads = st.builds(QuadExt, rationals, rationals)
nonzero_quads = quads.filter(lambda q: not q.is_zero())
vectors = st.tuples(quads, quads, quads).filter(lambda v: any(not c.is_zero() for c in v))


@pytest.fixture(scope="session")
def peres():
    return gen_peres_33()


@pytest.fixture(scope="session")
def triad():
    return gen_single_triad()


@pytest.fixture
def F():
    return Fraction


ACCEPTANCE: list[tuple[str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
