import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import polymatroids, random_polymatroid, rays_of, table
from polymat import known
from polymat.cuts import (
    cut_to_filter,
    generate_modular_cut,
    generate_modular_filter,
    is_principal_cut,
)
from polymat.extend import (
    ExcessFunction,
    check_star,
    epsilon,
    excess,
    excess_from_filter,
    excess_of_extension,
    is_intersectable,
    is_linear,
    one_point_extension,
    validate_excess,
)
from polymat.flats import flats, is_flat, nonmodular_flat_pairs
from polymat.setfun import (
    InputError,
    RankFunction,
    conic_combination,
    contract,
    modular_defect,
    restrict,
    validate_polymatroid,
)


def all_pairs_defect_ok(f, e):
    return all(
        (e(a) + e(b) - e(a | b) - e(a & b)) + modular_defect(f, a, b) >= 0
        for a in range(f.full + 1)
        for b in range(f.full + 1)
    )


def test_zero_and_constant_excess(m_star, m11):
    for f in (m_star, m11):
        assert validate_excess(f, excess(f, [0] * (f.full + 1))).valid
        assert validate_excess(f, excess(f, [Fraction(5, 2)] * (f.full + 1))).valid


def test_validate_excess_rejects_increasing(m_star):
    vals = [0] * 8
    vals[m_star.full] = 1
    rep = validate_excess(m_star, excess(m_star, vals))
    assert not rep.valid
    with pytest.raises(InputError):
        validate_excess(m_star, excess(m_star, [0] * 7))


def test_one_point_extension_examples(m_star):
    ext = one_point_extension(m_star, excess(m_star, [0] * 8))
    assert all(ext(a | 8) == m_star(a) for a in range(8))
    ext = one_point_extension(m_star, excess(m_star, [1] * 8))
    assert ext.ground.labels == ("a", "b", "c", "x")
    assert ext(8) == 1 and ext(15) == 3
    assert validate_polymatroid(ext).valid
    with pytest.raises(InputError):
        vals = [0] * 8
        vals[7] = 1
        one_point_extension(m_star, excess(m_star, vals))


@settings(max_examples=200, derandomize=True)
@given(polymatroids(), st.integers(0, 10**6))
def test_excess_from_filter_round_trip(f, seed):
    rng = random.Random(seed)
    seeds = rng.sample(range(f.full + 1), rng.randint(0, 3))
    g = generate_modular_filter(f, seeds)
    e = excess_from_filter(f, g)
    assert validate_excess(f, e).valid
    assert e(f.full) == 0
    assert {a for a in range(f.full + 1) if e(a) == 0} == g.members
    assert all_pairs_defect_ok(f, e)
    ext = one_point_extension(f, e)
    assert validate_polymatroid(ext, "facet").valid
    assert restrict(ext, f.full) == f
    assert excess_of_extension(ext, f.n) == list(e.values)


def test_excess_from_filter_examples(m11):
    g = m11.ground
    full = generate_modular_filter(m11, range(16))
    assert all(v == 0 for v in excess_from_filter(m11, full).values)
    filt = generate_modular_filter(m11, [g.subset("ac"), g.subset("bd")])
    e = excess_from_filter(m11, filt)
    assert e(g.subset("ac")) == e(g.subset("bd")) == 0
    assert e(0) == epsilon(m11) > 0
    assert validate_excess(m11, e).valid


def test_minimal_filter_excess_on_m_star(m_star):
    e = excess_from_filter(m_star, generate_modular_filter(m_star))
    spanning = {a for a in range(8) if m_star(a) == 2}
    assert {a for a in range(8) if e(a) == 0} == spanning
    assert validate_excess(m_star, e).valid


def test_intersectability_examples(m11):
    g = m11.ground
    w = is_intersectable(m11, g.subset("a"), g.subset("ab"))
    assert w.verdict == "modular"
    w = is_intersectable(m11, g.subset("ac"), g.subset("bd"))
    assert w.verdict == "excess-witness"
    assert w.excess(0) > 0 and 0 not in w.filter
    assert validate_excess(m11, w.excess).valid


@pytest.mark.parametrize("n,rows", [(2, known.EXTREMAL_2), (3, known.EXTREMAL_3)])
def test_small_tables_all_pairs_intersectable(n, rows):
    for vec in rows.values():
        f = RankFunction.from_display(vec)
        for a, b in combinations(range(f.full + 1), 2):
            assert is_intersectable(f, a, b).intersectable


def test_linearity_examples():
    assert is_linear(RankFunction.zero(3)) == (True, None)
    for vec in known.SURVIVORS_5:
        assert is_linear(RankFunction.from_display(vec))[0]


@settings(max_examples=50, derandomize=True)
@given(polymatroids(n=2))
def test_two_element_polymatroids_linear(f):
    assert is_linear(f)[0]


def test_star_examples(m_star, m11):
    assert check_star(m_star).status == "vacuous"
    rep = check_star(m11)
    g = m11.ground
    assert rep.status == "witnessed"
    assert rep.witness == (g.subset("ac"), g.subset("bd"))
    assert rep.cut.members == {g.subset("ac"), g.subset("bd"), m11.full}
    assert not is_principal_cut(rep.cut)
    assert check_star(RankFunction.zero(4)).status == "vacuous"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cut_separation_matches_intersectability(n):
    for f in rays_of(n):
        for a, b, _ in nonmodular_flat_pairs(f):
            separated = a & b not in generate_modular_cut(f, [a, b]).members
            w = is_intersectable(f, a, b)
            assert separated == (w.verdict == "excess-witness")
            if separated:
                assert w.excess(a) == w.excess(b) == 0 < w.excess(a & b)


def linear_witness(f, x, y):
    if modular_defect(f, x, y) == 0:
        return excess(f, [0] * (f.full + 1))
    w = is_intersectable(f, x, y)
    assert w.verdict == "excess-witness"
    return w.excess


@settings(max_examples=200, derandomize=True)
@given(polymatroids(n=3), polymatroids(n=3), st.fractions(Fraction(1, 5), 5), st.integers(0, 10**6))
def test_sum_of_linear_is_linear(f1, f2, lam, seed):
    total = conic_combination([(1, f1), (lam, f2)])
    assert is_linear(total)[0]
    rng = random.Random(seed)
    x, y = rng.randrange(8), rng.randrange(8)
    if modular_defect(total, x, y):
        e = linear_witness(f1, x, y).plus(linear_witness(f2, x, y).scale(lam), total)
        assert validate_excess(total, e).valid
        assert e(x) == e(y) == 0 < e(x & y)


def _separating_pairs(f):
    out = []
    for a, b, _ in nonmodular_flat_pairs(f):
        cut = generate_modular_cut(f, [a, b])
        if a & b not in cut.members:
            out.append((a, b, cut))
    return out


CUT_CARRIERS = [f for f in rays_of(4) if _separating_pairs(f)]


def test_cut_carriers_exist():
    assert len(CUT_CARRIERS) >= 4


@settings(max_examples=200, derandomize=True)
@given(st.sampled_from(CUT_CARRIERS), polymatroids(n=4), st.fractions(Fraction(1, 7), 7), st.integers(0, 10**6))
def test_cut_carrying_constituent_forces_star(m, nn, lam, seed):
    a, b, cut = random.Random(seed).choice(_separating_pairs(m))
    e_m = excess_from_filter(m, cut_to_filter(m, cut))
    assert e_m(a) == e_m(b) == 0 < e_m(a & b)
    total = conic_combination([(1, nn), (lam, m)])
    e = e_m.scale(lam, total)
    assert validate_excess(total, e).valid
    assert is_flat(total, a) and is_flat(total, b)
    assert check_star(total).status == "witnessed"


def direct_sum(g, h):
    """g on the low elements, h on the high ones."""
    n, shift = g.n + h.n, g.n
    low = (1 << shift) - 1
    return RankFunction.from_function(n, lambda m: g(m & low) + h(m >> shift))


# two rank-2 lines meeting in a point, summed with something on two more elements
LINES = RankFunction.from_display((2, 2, 3))
CROSSING_LINES = [direct_sum(LINES, h) for h in rays_of(2)] + [
    direct_sum(LINES, random_polymatroid(random.Random(k), 2)) for k in range(5)
]


def test_crossing_lines_have_intersecting_pairs():
    for f in CROSSING_LINES:
        assert validate_polymatroid(f).valid
        assert nonmodular_flat_pairs(f, intersecting_only=True)


@settings(max_examples=100, derandomize=True)
@given(st.sampled_from(CROSSING_LINES), polymatroids(n=4), st.fractions(Fraction(1, 7), 7))
def test_intersecting_pair_contracts_to_smaller_instance(m, nn, lam):
    a, b, _ = nonmodular_flat_pairs(m, intersecting_only=True)[0]
    total = conic_combination([(1, nn), (lam, m)])
    assert is_flat(total, a) and is_flat(total, b)
    assert modular_defect(total, a, b) > 0
    small = contract(total, a & b)
    assert small.n < total.n
    assert nonmodular_flat_pairs(small)
