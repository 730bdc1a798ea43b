from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from venlab.arith import MultiPoly
from venlab.maps import PolyMap

settings.register_profile(
    "venlab",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("venlab")

PROPERTY_CASES = 1000

coeffs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
nonzero_coeffs = coeffs.filter(bool)


def exponent_tuples(x_min=-2, x_max=3, top=3, names=6):
    others = st.tuples(*[st.integers(0, top)] * (names - 1))
    return st.builds(lambda ex, rest: (ex,) + rest + (0,) * (5 - len(rest)),
                     st.integers(x_min, x_max), others)


def polys(max_terms=4, x_min=-2, x_max=3, top=3, names=6):
    """Random MultiPoly; ``names`` limits the variables to the first few of x, y, z, u, t, c."""
    terms = st.dictionaries(exponent_tuples(x_min, x_max, top, names), nonzero_coeffs,
                            max_size=max_terms)
    return terms.map(MultiPoly.from_terms)


integral_polys = polys(x_min=0)
nonzero_polys = polys(max_terms=3).filter(bool)


def small_maps(vars=("y", "z", "u"), max_terms=3):
    """Integral maps on (y, z, u) with low-degree images."""
    img = polys(max_terms=max_terms, x_min=0, x_max=1, top=2, names=4)
    return st.fixed_dictionaries({v: img for v in vars}).map(PolyMap)


@pytest.fixture(scope="session")
def property_cases():
    return PROPERTY_CASES


# acceptance report ------------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
