"""Excess functions, one-point extensions, intersectability, linearity and property (*)."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cuts import (
    ModularCut,
    ModularFilter,
    generate_modular_cut,
    generate_modular_filter,
    is_modular_filter,
    is_principal_cut,
)
from .flats import flats, sort_key
from .setfun import (
    GroundSet,
    InputError,
    RankFunction,
    Subset,
    ValidationReport,
    Violation,
    elemental_triples,
    modular_defect,
)


@dataclass(frozen=True)
class ExcessFunction:
    """e(A) for every A ⊆ M, the empty set included."""

    rank: RankFunction
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.rank.n:
            raise InputError(f"excess needs {1 << self.rank.n} values, got {len(self.values)}")

    def __call__(self, mask: Subset) -> Fraction:
        return self.values[mask]

    def scale(self, c, rank: RankFunction | None = None) -> "ExcessFunction":
        c = Fraction(c)
        return ExcessFunction(rank or self.rank, tuple(c * v for v in self.values))

    def plus(self, other: "ExcessFunction", rank: RankFunction) -> "ExcessFunction":
        return ExcessFunction(rank, tuple(a + b for a, b in zip(self.values, other.values)))


def excess(rank: RankFunction, values: Sequence) -> ExcessFunction:
    return ExcessFunction(rank, tuple(Fraction(v) for v in values))


def validate_excess(rank: RankFunction, e: ExcessFunction) -> ValidationReport:
    """Non-negative and decreasing; the top-element and elemental-pair conditions."""
    if len(e.values) != 1 << rank.n:
        raise InputError("excess function has the wrong dimension")
    f, v = rank.values, e.values
    full, n = rank.full, rank.n
    bad = []
    for a in range(full + 1):
        if v[a] < 0:
            bad.append(Violation("excess-nonnegative", (a,), v[a]))
        for i in range(n):
            b = a | 1 << i
            if b != a and v[b] > v[a]:
                bad.append(Violation("excess-decreasing", (a, b), v[a] - v[b]))
    for i in range(n):
        rest = full ^ (1 << i)
        slack = (v[full] - v[rest]) + (f[full] - f[rest])
        if slack < 0:
            bad.append(Violation("excess-top", (rest, full), slack))
    for k, i, j in elemental_triples(n):
        a, b = k | 1 << i, k | 1 << j
        slack = (v[a] + v[b] - v[a | b] - v[k]) + (f[a] + f[b] - f[a | b] - f[k])
        if slack < 0:
            bad.append(Violation("excess-submodular", (a, b), slack))
    return ValidationReport(bad)


def _fresh_label(ground: GroundSet) -> str:
    if "x" not in ground.labels:
        return "x"
    return next(c for c in string.ascii_letters if c not in ground.labels)


def one_point_extension(rank: RankFunction, e: ExcessFunction) -> RankFunction:
    """Rank function on M + x with f'(A) = f(A) and f'(Ax) = f(A) + e(A)."""
    report = validate_excess(rank, e)
    if not report.valid:
        raise InputError(f"not an excess function: {report.violations[0].describe(rank.ground)}")
    n = rank.n
    ground = GroundSet(n + 1, rank.ground.labels + (_fresh_label(rank.ground),))
    x = 1 << n
    vals = list(rank.values) + [Fraction(0)] * x
    for a in range(x):
        vals[a | x] = rank.values[a] + e.values[a]
    return RankFunction(ground, tuple(vals))


def excess_of_extension(ext: RankFunction, base_n: int) -> list[Fraction]:
    """e(A) = f'(Ax) - f'(A) where x is element ``base_n`` of ``ext``."""
    x = 1 << base_n
    return [ext.values[a | x] - ext.values[a] for a in range(x)]


def epsilon(rank: RankFunction) -> Fraction:
    """Half the least positive top-drop or elemental modular defect (1 if there is none)."""
    f, full = rank.values, rank.full
    gaps = [f[full] - f[full ^ (1 << i)] for i in range(rank.n)]
    for k, i, j in elemental_triples(rank.n):
        a, b = k | 1 << i, k | 1 << j
        gaps.append(f[a] + f[b] - f[a | b] - f[k])
    positive = [g for g in gaps if g > 0]
    return min(positive) / 2 if positive else Fraction(1)


def excess_from_filter(rank: RankFunction, g: ModularFilter) -> ExcessFunction:
    """0 on the filter, a small ε elsewhere."""
    if not is_modular_filter(rank, g.members):
        raise InputError("not a modular filter")
    eps = epsilon(rank)
    zero = Fraction(0)
    return ExcessFunction(rank, tuple(zero if a in g.members else eps for a in range(rank.full + 1)))


# intersectability --------------------------------------------------------------


@dataclass(frozen=True)
class IntersectabilityWitness:
    verdict: str  # "modular" | "excess-witness" | "not-intersectable"
    x: Subset
    y: Subset
    excess: ExcessFunction | None = None
    filter: ModularFilter | None = field(default=None, repr=False)

    @property
    def intersectable(self) -> bool:
        return self.verdict != "not-intersectable"


def is_intersectable(rank: RankFunction, x: Subset, y: Subset) -> IntersectabilityWitness:
    if modular_defect(rank, x, y) == 0:
        return IntersectabilityWitness("modular", x, y)
    g = generate_modular_filter(rank, (x, y))
    if x & y in g.members:
        return IntersectabilityWitness("not-intersectable", x, y, filter=g)
    e = excess_from_filter(rank, g)
    assert e(x) == 0 and e(y) == 0 < e(x & y)
    return IntersectabilityWitness("excess-witness", x, y, e, g)


def is_linear(rank: RankFunction) -> tuple[bool, tuple[Subset, Subset] | None]:
    """True iff every pair of subsets is intersectable; otherwise the first failing pair."""
    masks = sorted(range(rank.full + 1), key=sort_key)
    f = rank.scaled
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a & b in (a, b):
                continue
            if f[a] + f[b] == f[a | b] + f[a & b]:
                continue
            if not is_intersectable(rank, a, b).intersectable:
                return False, (a, b)
    return True, None


# property (*) ---------------------------------------------------------------


@dataclass(frozen=True)
class StarReport:
    status: str  # "vacuous" | "witnessed" | "violated"
    witness: tuple[Subset, Subset] | None = None
    cut: ModularCut | None = None
    nonmodular_pairs: tuple[tuple[Subset, Subset], ...] = ()

    @property
    def violated(self) -> bool:
        return self.status == "violated"


def nonmodular_flat_pairs_desc(rank: RankFunction, intersecting: bool | None = None):
    """Non-modular flat pairs, larger flats first.

    Pairs are visited by descending (cardinality, bitmask) of the larger flat,
    then of the smaller one; each pair is returned as (smaller, larger).
    ``intersecting`` restricts to intersecting (True) or disjoint (False) pairs.
    """
    fl = flats(rank).flats
    f = rank.scaled
    for i in range(len(fl) - 1, -1, -1):
        b = fl[i]
        for j in range(i - 1, -1, -1):
            a = fl[j]
            if intersecting is not None and bool(a & b) != intersecting:
                continue
            if f[a] + f[b] != f[a | b] + f[a & b]:
                yield a, b


def separating_cut(rank: RankFunction, a: Subset, b: Subset) -> ModularCut | None:
    """The cut generated by flats a, b if it misses a ∩ b, else None."""
    cut = generate_modular_cut(rank, (a, b))
    return None if a & b in cut.members else cut


def check_star(rank: RankFunction) -> StarReport:
    """Decide whether ``rank`` satisfies (*): non-modular flat pair ⇒ non-principal modular cut.

    Only non-modular pairs can generate a cut missing their intersection, so the
    search is restricted to them.
    """
    pairs = list(nonmodular_flat_pairs_desc(rank))
    if not pairs:
        return StarReport("vacuous")
    for a, b in pairs:
        cut = separating_cut(rank, a, b)
        if cut is not None:
            assert not is_principal_cut(cut)
            return StarReport("witnessed", (a, b), cut)
    return StarReport("violated", nonmodular_pairs=tuple(pairs))
