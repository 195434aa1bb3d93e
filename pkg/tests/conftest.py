import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from scycles.projline import ProjPoint

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small = st.integers(-60, 60)
nonzero = small.filter(bool)


@st.composite
def points(draw, bound=60):
    x = draw(st.integers(-bound, bound))
    y = draw(st.integers(0, bound))
    if y == 0:
        return ProjPoint(1, 0)
    return ProjPoint(x, y)


@st.composite
def distinct_points(draw, n, bound=60):
    return tuple(draw(st.lists(points(bound), min_size=n, max_size=n, unique=True)))


rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))
nonzero_rationals = rationals.filter(bool)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k][1])
