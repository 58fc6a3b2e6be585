"""End-to-end acceptance checks.

Each test records one PASS/FAIL line, printed in the terminal summary.  The
five-element enumeration runs once per session (a few minutes on one core);
set POLYMAT_N5_BUDGET to cap it in seconds.
"""

import os
import random
import time
from fractions import Fraction

import pytest

from conftest import random_polymatroid, rays_of, record
from polymat import known
from polymat.cone import (
    classify_isomorphism,
    enumerate_extreme_rays,
    export_rays,
    facet_inequalities,
    import_rays,
    lemma_filter,
    orbit_total,
)
from polymat.cuts import (
    cut_to_filter,
    generate_modular_cut,
    generate_modular_filter,
    is_modular_filter,
    is_principal_cut,
)
from polymat.extend import check_star, excess_from_filter, is_linear, validate_excess
from polymat.flats import nonmodular_flat_pairs
from polymat.linrep import (
    LinearRepresentation,
    intersection_extension,
    parse_representation,
    rank_from_representation,
)
from polymat.pipeline import recheck_certificate, verify_paper
from polymat.setfun import RankFunction, canonical_form, conic_combination, modular_defect, validate_polymatroid

pytestmark = pytest.mark.slow

N5_BUDGET = float(os.environ.get("POLYMAT_N5_BUDGET", 3600))
CASES = 200


def canon(rows):
    return {canonical_form(RankFunction.from_display(r)).display_vector() for r in rows}


def displays(classes):
    return {c.representative.display() for c in classes}


@pytest.fixture(scope="session")
def n5(tmp_path_factory):
    t0 = time.monotonic()
    rays = enumerate_extreme_rays(facet_inequalities(5), budget_seconds=N5_BUDGET)
    seconds = time.monotonic() - t0
    path = tmp_path_factory.mktemp("rays") / "rays5.txt"
    export_rays(path, rays, 5)
    classes = classify_isomorphism(rays)
    return {
        "rays": rays,
        "seconds": seconds,
        "path": path,
        "classes": classes,
        "filter": lemma_filter(classes),
    }


@pytest.fixture(scope="session")
def small():
    out = {}
    for n in (2, 3, 4):
        t0 = time.monotonic()
        rays = enumerate_extreme_rays(facet_inequalities(n))
        out[n] = (rays, time.monotonic() - t0, classify_isomorphism(rays))
    return out


def test_1_ray_counts(small, n5):
    counts = {n: len(small[n][0]) for n in small} | {5: len(n5["rays"])}
    imported = len(import_rays(n5["path"], 5))
    fast = all(small[n][1] < 5 for n in small)
    ok = counts == known.RAY_COUNTS and fast and n5["seconds"] <= N5_BUDGET and imported == 117983
    slowest = max(small[n][1] for n in small)
    record("1 ray counts", ok, f"{counts}; n<=4 max {slowest:.2f}s; n=5 {n5['seconds']:.0f}s; import {imported}")
    assert ok


def test_2_isomorphism_classes(small, n5):
    c3, c4, c5 = small[3][2], small[4][2], n5["classes"]
    ok3 = len(c3) == 4 and displays(c3) == canon(known.EXTREMAL_3.values())
    ok4 = len(c4) == 11 and displays(c4) == canon(known.EXTREMAL_4.values())
    ok5 = len(c5) == 1320 and orbit_total(c5) == 117983
    record("2 isomorphism classes", ok3 and ok4 and ok5, f"{len(c3)} / {len(c4)} / {len(c5)}")
    assert ok3 and ok4 and ok5


def test_3_elimination_filter(small, n5):
    res5 = n5["filter"]
    ok5 = len(res5.survivors) == 17 and displays(res5.survivors) == canon(known.SURVIVORS_5)
    m11 = canonical_form(RankFunction.from_display(known.EXTREMAL_4["M_11"])).display_vector()
    (hit,) = [e for e in lemma_filter(small[4][2]).eliminated if e.iso.representative.display() == m11]
    g = hit.iso.rank_function().ground
    cut = [g.name(m) for m in hit.cut.sorted()] if hit.cut else None
    ok4 = hit.rule == "b" and cut == ["ac", "bd", "abcd"]
    ok = ok5 and ok4 and all(e.recheck() for e in res5.eliminated)
    record("3 elimination filter", ok, f"{len(res5.survivors)} survivors at n=5; M_11 rule {hit.rule} cut {cut}")
    assert ok


def test_4_star_property(small, n5):
    t0 = time.monotonic()
    statuses = [check_star(c.rank_function()).status for c in small[4][2] + n5["classes"]]
    seconds = time.monotonic() - t0
    violated = statuses.count("violated")
    ok = len(statuses) == 11 + 1320 and violated == 0 and seconds <= 300
    record("4 star property", ok, f"{len(statuses)} classes, {violated} violated, {seconds:.1f}s")
    assert ok


def test_5_linearity(small, n5):
    pool = [c.rank_function() for n in (2, 3) for c in small[n][2]]
    pool += [RankFunction.from_display(v) for k, v in known.EXTREMAL_4.items() if k != "M_11"]
    pool += [c.rank_function() for c in n5["filter"].survivors]
    failures = [f.display_vector() for f in pool if not is_linear(f)[0]]
    record("5 linearity", not failures, f"{len(pool)} polymatroids, {len(failures)} not linear")
    assert not failures


def test_6_representation_oracle():
    f = rank_from_representation(parse_representation(known.M10_REPRESENTATION))
    ok = f.display_vector() == known.EXTREMAL_4["M_10"]
    record("6 M_10 over GF(2)", ok, ",".join(map(str, f.display_vector())))
    assert ok


def perturbed(rng, n):
    """A polymatroid, often nudged off the cone at one coordinate."""
    f = random_polymatroid(rng, n)
    vals = list(f.values)
    if rng.random() < 0.7:
        i = rng.randrange(1, len(vals))
        vals[i] += Fraction(rng.choice([-2, -1, 1, 2]), rng.randint(1, 3))
    return RankFunction(f.ground, tuple(vals))


def suite_a(rng):
    f = perturbed(rng, rng.choice((2, 3, 4)))
    return validate_polymatroid(f, "full").valid == validate_polymatroid(f, "facet").valid


def suite_b(rng):
    f = random_polymatroid(rng, rng.choice((2, 3, 4)))
    pairs = nonmodular_flat_pairs(f)
    seeds = [x for p in rng.sample(pairs, min(len(pairs), 2)) for x in p[:2]] or [f.full]
    cut = generate_modular_cut(f, seeds)
    return is_modular_filter(f, cut_to_filter(f, cut).members)


def suite_c(rng):
    f = random_polymatroid(rng, rng.choice((2, 3, 4)))
    g = generate_modular_filter(f, rng.sample(range(f.full + 1), rng.randint(0, 3)))
    e = excess_from_filter(f, g)
    return validate_excess(f, e).valid and {a for a in range(f.full + 1) if e(a) == 0} == g.members


def suite_d(rng):
    p = rng.choice((2, 3, 5))
    d = rng.randint(1, 4)
    gens = [[tuple(rng.randrange(p) for _ in range(d)) for _ in range(rng.randint(0, 2))] for _ in range(3)]
    rep = LinearRepresentation.build(p, gens, d)
    f = rank_from_representation(rep)
    x, y = rng.randrange(8), rng.randrange(8)
    e = intersection_extension(rep, x, y)
    return validate_excess(f, e).valid and e(x & y) == modular_defect(f, x, y)


def suite_e(rng):
    terms = [(Fraction(rng.randint(1, 9), rng.randint(1, 4)), random_polymatroid(rng, 3)) for _ in range(rng.randint(1, 3))]
    return is_linear(conic_combination(terms))[0]


CUT_CARRIERS = [
    (m, a, b, cut)
    for m in rays_of(4)
    for a, b, _ in nonmodular_flat_pairs(m)
    if not is_principal_cut(cut := generate_modular_cut(m, (a, b)))
]


def suite_f(rng):
    m, a, b, cut = rng.choice(CUT_CARRIERS)
    lam = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    total = conic_combination([(1, random_polymatroid(rng, 4)), (lam, m)])
    e = excess_from_filter(m, cut_to_filter(m, cut)).scale(lam, total)
    return validate_excess(total, e).valid and check_star(total).status == "witnessed"


SUITES = {
    "a facet vs full validation": (suite_a, 101),
    "b cut to filter": (suite_b, 102),
    "c filter/excess round trip": (suite_c, 103),
    "d subspace intersection excess": (suite_d, 104),
    "e conic combinations stay linear": (suite_e, 105),
    "f cut-carrying constituent": (suite_f, 106),
}


@pytest.mark.parametrize("name", list(SUITES))
def test_7_property_suites(name):
    fn, seed = SUITES[name]
    rng = random.Random(seed)
    failures = sum(not fn(rng) for _ in range(CASES))
    record(f"7{name[0]} {name[2:]}", failures == 0, f"{CASES} cases, {failures} failures")
    assert failures == 0


def test_8_verify_pipeline(n5):
    cert = verify_paper(max_n=5, rays_from=n5["path"])
    problems = recheck_certificate(cert)
    ok = cert["verdict"] == "PASS" and not problems
    record("8 verify pipeline", ok, f"verdict {cert['verdict']}, {len(problems)} witness problems")
    assert ok
