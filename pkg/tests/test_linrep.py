import random

import pytest
from hypothesis import given, settings, strategies as st

from polymat import known
from polymat.extend import is_intersectable, validate_excess
from polymat.linrep import (
    LinearRepresentation,
    format_representation,
    intersect_spans,
    intersection_extension,
    parse_representation,
    rank_from_representation,
    rank_mod_p,
)
from polymat.setfun import InputError, RankFunction, modular_defect, validate_polymatroid


@st.composite
def representations(draw, n=3, primes=(2, 3), max_d=3, max_gens=2):
    p = draw(st.sampled_from(primes))
    d = draw(st.integers(1, max_d))
    vec = st.tuples(*[st.integers(0, p - 1)] * d)
    gens = draw(st.lists(st.lists(vec, max_size=max_gens), min_size=n, max_size=n))
    return LinearRepresentation.build(p, gens, d)


def test_free_polymatroid():
    rep = LinearRepresentation.build(5, [[(1, 0, 0)], [(0, 1, 0)], [(0, 0, 1)]])
    f = rank_from_representation(rep)
    assert all(f(m) == bin(m).count("1") for m in range(8))


def test_m10_recipe_reproduces_table_row():
    rep = parse_representation(known.M10_REPRESENTATION)
    assert rank_from_representation(rep).display_vector() == known.EXTREMAL_4["M_10"]


def test_m10_intersection_extension():
    rep = parse_representation(known.M10_REPRESENTATION)
    f = rank_from_representation(rep)
    g = f.ground
    x, y = g.subset("ad"), g.subset("bd")
    e = intersection_extension(rep, x, y)
    assert e(x) == e(y) == 0
    assert e(x & y) == modular_defect(f, x, y) == 1
    assert validate_excess(f, e).valid


def test_nested_pair_gives_zero_gap():
    rep = parse_representation(known.M10_REPRESENTATION)
    e = intersection_extension(rep, 0b0001, 0b0011)
    assert e(0b0001) == 0


def test_rank_and_intersection_helpers():
    assert rank_mod_p([(1, 1), (1, 1)], 2) == 1
    assert rank_mod_p([(1, 2), (2, 1)], 3) == 1
    assert rank_mod_p([(1, 2), (2, 1)], 5) == 2
    meet = intersect_spans([(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)], 2)
    assert meet == [[0, 1, 0]]
    assert intersect_spans([], [(1, 0)], 2) == []


def test_file_format_round_trip():
    rep = parse_representation(known.M10_REPRESENTATION)
    assert parse_representation(format_representation(rep)) == rep
    with pytest.raises(InputError):
        parse_representation("linrep v1 p=4 d=2\na: 1 0\n")
    with pytest.raises(InputError):
        parse_representation("linrep v1 p=2 d=2\na: 1 0 1\n")
    with pytest.raises(InputError):
        parse_representation("nonsense\n")


@settings(max_examples=200, derandomize=True)
@given(representations())
def test_represented_rank_is_polymatroid(rep):
    f = rank_from_representation(rep)
    assert f.is_integer()
    assert validate_polymatroid(f).valid
    for m in range(f.full + 1):
        assert f(m) <= len(rep.generators(m))


@settings(max_examples=200, derandomize=True)
@given(representations(n=3, primes=(2, 3, 5), max_d=4, max_gens=3), st.integers(0, 10**6))
def test_intersection_extension_witnesses_intersectability(rep, seed):
    f = rank_from_representation(rep)
    rng = random.Random(seed)
    x, y = rng.randrange(f.full + 1), rng.randrange(f.full + 1)
    e = intersection_extension(rep, x, y)
    assert validate_excess(f, e).valid
    assert e(x) == e(y) == 0
    assert e(x & y) == modular_defect(f, x, y)
    if modular_defect(f, x, y):
        assert is_intersectable(f, x, y).verdict == "excess-witness"
