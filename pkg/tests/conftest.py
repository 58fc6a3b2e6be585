import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from polymat import known
from polymat.cone import enumerate_extreme_rays, facet_inequalities
from polymat.setfun import RankFunction, conic_combination

_RAYS = {}


def rays_of(n):
    if n not in _RAYS:
        _RAYS[n] = [r.rank_function() for r in enumerate_extreme_rays(facet_inequalities(n))]
    return _RAYS[n]


def table(name, n):
    rows = {2: known.EXTREMAL_2, 3: known.EXTREMAL_3, 4: known.EXTREMAL_4}[n]
    return RankFunction.from_display(rows[name])


def random_polymatroid(rng: random.Random, n: int, density: float = 0.4) -> RankFunction:
    """Random conic combination of extreme rays with small rational coefficients."""
    terms = []
    for f in rays_of(n):
        if rng.random() < density:
            terms.append((Fraction(rng.randint(1, 6), rng.randint(1, 4)), f))
    if not terms:
        terms = [(1, rng.choice(rays_of(n)))]
    return conic_combination(terms)


@st.composite
def polymatroids(draw, n=None, sizes=(2, 3, 4)):
    n = n if n is not None else draw(st.sampled_from(sizes))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_polymatroid(random.Random(seed), n)


@pytest.fixture(scope="session")
def m_star():
    return table("M_*", 3)


@pytest.fixture(scope="session")
def m11():
    return table("M_11", 4)


@pytest.fixture(scope="session")
def m10():
    return table("M_10", 4)


ACCEPTANCE = []


def record(criterion, ok, detail=""):
    ACCEPTANCE.append((criterion, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")
