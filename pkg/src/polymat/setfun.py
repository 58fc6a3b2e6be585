"""Ground sets, subsets as bitmasks, and exact rational rank functions.

Subsets are plain ``int`` bitmasks: bit ``i`` set means element ``i`` is
present.  A :class:`RankFunction` stores one :class:`~fractions.Fraction`
per subset, indexed by bitmask, with ``values[0] == 0``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import lcm
from typing import Iterable, Sequence

MAX_N = 16

Subset = int


class InputError(ValueError):
    """Raised for malformed input objects (wrong dimension, bad labels, ...)."""


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise InputError(f"ground set size must be in 1..{MAX_N}, got {self.n}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(string.ascii_lowercase[: self.n]))
        if len(self.labels) != self.n or len(set(self.labels)) != self.n:
            raise InputError(f"need {self.n} distinct labels, got {self.labels!r}")

    @property
    def full(self) -> Subset:
        return (1 << self.n) - 1

    def subset(self, spec: str | Iterable[str]) -> Subset:
        """Parse ``"ac"`` (or an iterable of labels) into a bitmask."""
        if isinstance(spec, str) and spec in ("", "∅", "0", "{}"):
            return 0
        items = list(spec) if isinstance(spec, str) else list(spec)
        mask = 0
        for item in items:
            try:
                mask |= 1 << self.labels.index(item)
            except ValueError:
                raise InputError(f"unknown element {item!r}") from None
        return mask

    def name(self, mask: Subset) -> str:
        if not mask:
            return "∅"
        return "".join(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def display_order(self) -> list[Subset]:
        """Nonempty subsets by cardinality, then alphabetically within a cardinality."""
        return display_order(self.n)

    def remove(self, mask: Subset) -> "GroundSet":
        keep = tuple(lab for i, lab in enumerate(self.labels) if not mask >> i & 1)
        return GroundSet(len(keep), keep)


def display_order(n: int) -> list[Subset]:
    order = []
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            order.append(sum(1 << i for i in combo))
    return order


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements(mask: Subset) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subsets_of(mask: Subset) -> Iterable[Subset]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("floating point ranks are not accepted; use ints, Fractions or strings")
    return Fraction(x)


@dataclass(frozen=True)
class RankFunction:
    """A set function with exact rational values on all subsets of ``ground``."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.ground.n:
            raise InputError(
                f"expected {1 << self.ground.n} values (incl. empty set), got {len(self.values)}"
            )
        if self.values[0] != 0:
            raise InputError("f(∅) must be 0")

    # construction ------------------------------------------------------

    @classmethod
    def from_vector(cls, vector: Sequence, ground: GroundSet | int | None = None) -> "RankFunction":
        """Build from the 2^n - 1 values of the nonempty subsets in bitmask order."""
        ground = _ground_for(len(vector), ground)
        return cls(ground, (Fraction(0),) + tuple(_frac(v) for v in vector))

    @classmethod
    def from_display(cls, vector: Sequence, ground: GroundSet | int | None = None) -> "RankFunction":
        """Build from values listed by cardinality, then alphabetically."""
        ground = _ground_for(len(vector), ground)
        vals = [Fraction(0)] * (1 << ground.n)
        for mask, v in zip(ground.display_order(), vector):
            vals[mask] = _frac(v)
        return cls(ground, tuple(vals))

    @classmethod
    def from_function(cls, ground: GroundSet | int, fn) -> "RankFunction":
        if isinstance(ground, int):
            ground = GroundSet(ground)
        return cls(ground, (Fraction(0),) + tuple(_frac(fn(m)) for m in range(1, 1 << ground.n)))

    @classmethod
    def zero(cls, ground: GroundSet | int) -> "RankFunction":
        return cls.from_function(ground, lambda m: 0)

    # access --------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> Subset:
        return self.ground.full

    def __call__(self, mask: Subset) -> Fraction:
        return self.values[mask]

    def vector(self) -> tuple[Fraction, ...]:
        """Values on nonempty subsets, bitmask order."""
        return self.values[1:]

    def display_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.values[m] for m in self.ground.display_order())

    @cached_property
    def scaled(self) -> tuple[int, ...]:
        """Values times the common denominator; same zero/sign pattern as ``values``."""
        den = lcm(*(v.denominator for v in self.values))
        return tuple(int(v * den) for v in self.values)

    def is_integer(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __add__(self, other: "RankFunction") -> "RankFunction":
        return conic_combination([(1, self), (1, other)])

    def __rmul__(self, c) -> "RankFunction":
        return conic_combination([(c, self)])

    def __repr__(self):
        body = ",".join(str(v) for v in self.display_vector())
        return f"RankFunction(n={self.n}, [{body}])"


def _ground_for(length: int, ground) -> GroundSet:
    if isinstance(ground, GroundSet):
        n = ground.n
    else:
        n = (length + 1).bit_length() - 1
        if ground is not None and ground != n:
            raise InputError(f"vector of length {length} does not fit n={ground}")
        ground = GroundSet(n) if n >= 1 else None
    if ground is None or length != (1 << n) - 1:
        raise InputError(f"vector length {length} is not 2^n - 1 for any n >= 1")
    return ground


# validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    subsets: tuple[Subset, ...]
    slack: Fraction

    def describe(self, ground: GroundSet) -> str:
        names = ", ".join(ground.name(s) for s in self.subsets)
        return f"{self.kind}({names}) slack {self.slack}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_polymatroid(rank: RankFunction, mode: str = "full") -> ValidationReport:
    """Check the polymatroid axioms.

    ``full`` tests nonnegativity, every monotone pair and every submodular pair;
    ``facet`` tests only the elemental inequalities, which imply the rest.
    """
    f = rank.values
    n, full = rank.n, rank.full
    bad: list[Violation] = []
    if mode == "full":
        for a in range(1, full + 1):
            if f[a] < 0:
                bad.append(Violation("nonnegative", (a,), f[a]))
        for b in range(1, full + 1):
            for a in subsets_of(b):
                if a != b and f[b] < f[a]:
                    bad.append(Violation("monotone", (a, b), f[b] - f[a]))
        for a in range(full + 1):
            for b in range(a + 1, full + 1):
                d = f[a] + f[b] - f[a | b] - f[a & b]
                if d < 0:
                    bad.append(Violation("submodular", (a, b), d))
    elif mode == "facet":
        for i in range(n):
            rest = full ^ (1 << i)
            if f[full] < f[rest]:
                bad.append(Violation("monotone", (rest, full), f[full] - f[rest]))
        for k, i, j in elemental_triples(n):
            a, b = k | 1 << i, k | 1 << j
            d = f[a] + f[b] - f[a | b] - f[k]
            if d < 0:
                bad.append(Violation("submodular", (a, b), d))
    else:
        raise InputError(f"unknown validation mode {mode!r}")
    return ValidationReport(bad)


def elemental_triples(n: int) -> list[tuple[Subset, int, int]]:
    """(K, i, j) with i < j, both outside K, sorted by (K, i, j)."""
    out = []
    for k in range(1 << n):
        free = [i for i in range(n) if not k >> i & 1]
        out.extend((k, i, j) for i, j in combinations(free, 2))
    return out


def modular_defect(rank: RankFunction, a: Subset, b: Subset) -> Fraction:
    f = rank.values
    return f[a] + f[b] - f[a | b] - f[a & b]


# derived polymatroids ----------------------------------------------------


def _compress(mask: Subset, keep: list[int]) -> Subset:
    return sum(1 << pos for pos, i in enumerate(keep) if mask >> i & 1)


def contract(rank: RankFunction, s: Subset) -> RankFunction:
    """f/S on M - S: A -> f(A ∪ S) - f(S)."""
    if s & ~rank.full:
        raise InputError("contraction set is not a subset of the ground set")
    if s == rank.full:
        raise InputError("contracting the whole ground set leaves an empty ground set")
    keep = [i for i in range(rank.n) if not s >> i & 1]
    ground = rank.ground.remove(s)
    f = rank.values
    vals = [Fraction(0)] * (1 << len(keep))
    for a in range(rank.full + 1):
        if a & s == 0:
            vals[_compress(a, keep)] = f[a | s] - f[s]
    return RankFunction(ground, tuple(vals))


def restrict(rank: RankFunction, t: Subset) -> RankFunction:
    """The restriction of ``rank`` to the elements of ``t``."""
    if not t or t & ~rank.full:
        raise InputError("restriction set must be a nonempty subset of the ground set")
    keep = elements(t)
    ground = GroundSet(len(keep), tuple(rank.ground.labels[i] for i in keep))
    vals = [Fraction(0)] * (1 << len(keep))
    for a in subsets_of(t):
        vals[_compress(a, keep)] = rank.values[a]
    return RankFunction(ground, tuple(vals))


def conic_combination(terms: Sequence[tuple]) -> RankFunction:
    if not terms:
        raise InputError("empty combination")
    ground = terms[0][1].ground
    total = [Fraction(0)] * (1 << ground.n)
    for coef, rank in terms:
        coef = _frac(coef)
        if coef < 0:
            raise InputError(f"negative coefficient {coef}")
        if rank.ground.n != ground.n:
            raise InputError("terms live on different ground sets")
        if coef:
            for m, v in enumerate(rank.values):
                total[m] += coef * v
    return RankFunction(ground, tuple(total))


# isomorphism -------------------------------------------------------------


def permute_mask(mask: Subset, perm: Sequence[int]) -> Subset:
    """Image of ``mask`` when element i is relabelled perm[i]."""
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


def permute(rank: RankFunction, perm: Sequence[int]) -> RankFunction:
    """The rank function g with g(π(A)) = f(A)."""
    vals = [Fraction(0)] * len(rank.values)
    for m, v in enumerate(rank.values):
        vals[permute_mask(m, perm)] = v
    return RankFunction(rank.ground, tuple(vals))


def permutation_tables(n: int) -> list[list[int]]:
    """For each permutation π, the display-order positions read off by π.

    Row ``t`` maps output display slot ``k`` to the bitmask whose value lands there,
    so ``[f[m] for m in t]`` is the display vector of π·f.
    """
    order = display_order(n)
    tables = []
    for perm in permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        tables.append([permute_mask(m, inv) for m in order])
    return tables


_TABLE_CACHE: dict[int, list[list[int]]] = {}


def canonical_form(rank: RankFunction) -> RankFunction:
    """Lexicographically least display vector over all relabellings."""
    n = rank.n
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = permutation_tables(n)
    f = rank.values
    best = min(tuple(f[m] for m in t) for t in _TABLE_CACHE[n])
    return RankFunction.from_display(best, rank.ground)


def is_isomorphic(f: RankFunction, g: RankFunction) -> bool:
    return f.n == g.n and canonical_form(f) == canonical_form(g)
