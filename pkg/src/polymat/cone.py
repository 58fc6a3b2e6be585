"""The polymatroid cone: facet system, extreme rays, isomorphism classes and
the elimination filter used to thin out the extremal polymatroids.

Coordinates are the nonempty subsets in bitmask order: column ``j`` holds
f(mask j+1).  All ray arithmetic is on int64 arrays with explicit overflow
guards, so results are exact.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import _dd
from .cuts import ModularCut, is_principal_cut
from .extend import (
    check_star,
    is_linear,
    nonmodular_flat_pairs_desc,
    separating_cut,
)
from .setfun import (
    InputError,
    RankFunction,
    Subset,
    display_order,
    elemental_triples,
    modular_defect,
    permutation_tables,
)

log = logging.getLogger(__name__)

RAY_HEADER = "polymatroid-rays v1"
_PRIME = 2_147_483_647
_INT_LIMIT = 1 << 62


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FacetSystem:
    n: int
    rows: np.ndarray = field(repr=False)
    tags: tuple[tuple, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    def __len__(self):
        return self.rows.shape[0]

    def describe(self, k: int) -> str:
        tag = self.tags[k]
        if tag[0] == "monotone":
            return f"f(M) >= f(M-{tag[1]})"
        _, kk, i, j = tag
        return f"delta({i}K,{j}K) >= 0, K={kk:#b}"


def facet_inequalities(n: int) -> FacetSystem:
    """Monotone rows f(M) - f(M-i) >= 0, then elemental rows sorted by (K, i, j)."""
    if not 1 <= n <= 6:
        raise InputError(f"facet system supported for 1 <= n <= 6, got {n}")
    full = (1 << n) - 1
    rows, tags = [], []
    for i in range(n):
        r = [0] * full
        r[full - 1] += 1
        if full ^ 1 << i:
            r[(full ^ 1 << i) - 1] -= 1
        rows.append(r)
        tags.append(("monotone", i))
    for k, i, j in elemental_triples(n):
        r = [0] * full
        r[(k | 1 << i) - 1] += 1
        r[(k | 1 << j) - 1] += 1
        r[(k | 1 << i | 1 << j) - 1] -= 1
        if k:
            r[k - 1] -= 1
        rows.append(r)
        tags.append(("submodular", k, i, j))
    assert len(rows) == comb(n, 2) * 2 ** max(n - 2, 0) + n
    return FacetSystem(n, np.array(rows, dtype=np.int64).reshape(len(rows), full), tuple(tags))


@dataclass(frozen=True)
class ExtremeRay:
    """Primitive integer rank vector (bitmask order) and its tight facet set."""

    vector: tuple[int, ...]
    tight: frozenset[int] = field(compare=False)

    @property
    def n(self) -> int:
        return (len(self.vector) + 1).bit_length() - 1

    def rank_function(self) -> RankFunction:
        return RankFunction.from_vector(self.vector)

    def display(self) -> tuple[int, ...]:
        return tuple(self.vector[m - 1] for m in display_order(self.n))


# exact helpers -----------------------------------------------------------------


def _independent_rows(rows: np.ndarray) -> list[int]:
    """Indices of the first maximal linearly independent set of rows, in order."""
    d = rows.shape[1]
    chosen: list[int] = []
    echelon: list[tuple[int, list[Fraction]]] = []
    for idx in range(rows.shape[0]):
        v = [Fraction(int(x)) for x in rows[idx]]
        for piv, row in echelon:
            if v[piv]:
                c = v[piv] / row[piv]
                v = [a - c * b for a, b in zip(v, row)]
        nz = next((k for k, x in enumerate(v) if x), None)
        if nz is not None:
            echelon.append((nz, v))
            chosen.append(idx)
            if len(chosen) == d:
                break
    return chosen


def _inverse_columns(B: np.ndarray) -> list[list[Fraction]]:
    """Columns of B^-1 by exact Gauss-Jordan."""
    d = B.shape[0]
    aug = [[Fraction(int(x)) for x in B[i]] + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c]:
                fac = aug[i][c]
                aug[i] = [a - fac * b for a, b in zip(aug[i], aug[c])]
    return [[aug[i][d + j] for i in range(d)] for j in range(d)]


def _primitive(values: Sequence[Fraction]) -> list[int]:
    den = np.lcm.reduce([v.denominator for v in values])
    ints = [int(v * int(den)) for v in values]
    g = int(np.gcd.reduce(np.abs(ints)))
    return [x // g for x in ints]


def exact_rank(rows: np.ndarray) -> int:
    """Rank over the rationals (fraction-free elimination on Python ints)."""
    A = [[int(x) for x in r] for r in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                a = A[i][c]
                A[i] = [p[c] * x - a * y for x, y in zip(A[i], p)]
        rank += 1
    return rank


def _tight_matrix(rows: np.ndarray, R: np.ndarray) -> np.ndarray:
    return (R @ rows.T) == 0


# double description --------------------------------------------------------------


def enumerate_extreme_rays(
    facets: FacetSystem,
    budget_seconds: float | None = None,
    max_rays: int | None = None,
    check: bool = False,
    progress: Callable[[int, int, int], None] | None = None,
) -> list[ExtremeRay]:
    """All extreme rays of {x : rows·x >= 0}, normalized, deduplicated and sorted.

    The cone is pointed and full-dimensional.  Start from the simplicial cone of
    the first ``dim`` independent rows and insert the remaining rows in order.
    ``check`` re-verifies every partial cone (slow; meant for tests).
    """
    A = facets.rows
    nrows, d = A.shape
    W = (nrows + 63) // 64
    start = time.monotonic()

    basis = _independent_rows(A)
    if len(basis) < d:
        raise InputError("inequality system does not define a pointed cone")
    R = np.array([_primitive(col) for col in _inverse_columns(A[basis])], dtype=np.int64)
    T = np.zeros((d, W), dtype=np.uint64)
    for k, row in enumerate(basis):
        for r in range(d):
            if r != k:
                T[r, row // 64] |= np.uint64(1) << np.uint64(row % 64)
    done = list(basis)
    order = [i for i in range(nrows) if i not in set(basis)]

    for step, row in enumerate(order):
        s = R @ A[row]
        pos = np.flatnonzero(s > 0)
        neg = np.flatnonzero(s < 0)
        zer = np.flatnonzero(s == 0)
        if len(pos) and len(neg):
            bound = int(np.abs(s).max()) * int(np.abs(R).max()) * 2
            if bound >= _INT_LIMIT:
                raise OverflowError("ray entries outgrew int64 arithmetic")
            F, counts = _dd.ray_bitmaps(T, nrows)
            facet_order = np.argsort(counts, kind="stable").astype(np.int64)
            pp, qq = _dd.adjacent_pairs(T, pos, neg, d - 2, F, facet_order, 32)
        else:
            pp = qq = np.zeros(0, dtype=np.int64)
        bit = np.uint64(1) << np.uint64(row % 64)
        if len(pp):
            new = s[pp][:, None] * R[qq] - s[qq][:, None] * R[pp]
            new //= np.gcd.reduce(new, axis=1)[:, None]
            newT = T[pp] & T[qq]
            newT[:, row // 64] |= bit
        else:
            new = np.zeros((0, d), dtype=np.int64)
            newT = np.zeros((0, W), dtype=np.uint64)
        T[zer, row // 64] |= bit
        keep = np.concatenate([pos, zer])
        R = np.concatenate([R[keep], new])
        T = np.concatenate([T[keep], newT])
        R, first = np.unique(R, axis=0, return_index=True)
        T = T[first]
        done.append(row)
        elapsed = time.monotonic() - start
        log.debug("step %d row %d: +%d -%d 0%d new %d -> %d rays (%.1fs)",
                  step, row, len(pos), len(neg), len(zer), len(pp), len(R), elapsed)
        if progress is not None:
            progress(step + 1, len(order), len(R))
        if check:
            _check_partial(A, done, R, T)
        if max_rays is not None and len(R) > max_rays:
            raise BudgetExceeded(
                f"{len(R)} intermediate rays exceed the limit of {max_rays}; "
                "import precomputed rays instead (import_rays / --rays-from)"
            )
        if budget_seconds is not None and elapsed > budget_seconds:
            raise BudgetExceeded(
                f"ray enumeration exceeded {budget_seconds}s after {step + 1}/{len(order)} insertions; "
                "import precomputed rays instead (import_rays / --rays-from)"
            )

    return _finish(A, R, facets.n)


def _check_partial(A, done, R, T):
    S = R @ A[done].T
    if (S < 0).any():
        raise AssertionError("partial cone ray violates an inserted inequality")
    for r in range(len(R)):
        for k, row in enumerate(done):
            flag = bool(int(T[r, row // 64]) >> (row % 64) & 1)
            if flag != (S[r, k] == 0):
                raise AssertionError("tight set out of sync with ray values")


def _finish(A: np.ndarray, R: np.ndarray, n: int) -> list[ExtremeRay]:
    tight = _tight_matrix(A, R)
    key = np.array([[v[m - 1] for m in display_order(n)] for v in R.tolist()]) if len(R) else R
    order = np.lexsort(key.T[::-1]) if len(R) else []
    out = []
    for idx in order:
        out.append(ExtremeRay(tuple(int(x) for x in R[idx]), frozenset(np.flatnonzero(tight[idx]).tolist())))
    return out


def check_extreme(facets: FacetSystem, vectors: np.ndarray) -> np.ndarray:
    """Boolean mask: vector lies in the cone, is nonzero and its tight rows have rank dim-1."""
    A = facets.rows
    d = facets.dim
    vals = vectors @ A.T
    inside = (vals >= 0).all(axis=1) & (vectors != 0).any(axis=1)
    tight = vals == 0
    ranks = _dd.tight_ranks_mod(A, tight, _PRIME)
    ok = inside & (ranks == d - 1)
    # modular rank can only undercount; confirm doubtful cases exactly
    for r in np.flatnonzero(inside & (ranks < d - 1)):
        ok[r] = exact_rank(A[tight[r]]) == d - 1
    return ok


# ray files ----------------------------------------------------------------------


def export_rays(path: str | Path, rays: Sequence[ExtremeRay], n: int) -> None:
    order = display_order(n)
    lines = [f"{RAY_HEADER} n={n} count={len(rays)}"]
    for ray in rays:
        lines.append(",".join(str(ray.vector[m - 1]) for m in order))
    Path(path).write_text("\n".join(lines) + "\n")


def import_rays(path: str | Path, n: int) -> list[ExtremeRay]:
    """Read, normalize and re-certify rays written by :func:`export_rays`."""
    text = Path(path).read_text().splitlines()
    if not text:
        raise InputError("empty ray file")
    head = text[0].split()
    try:
        if " ".join(head[:2]) != RAY_HEADER:
            raise ValueError
        meta = dict(tok.split("=", 1) for tok in head[2:])
        file_n, count = int(meta["n"]), int(meta["count"])
    except (ValueError, KeyError):
        raise InputError(f"bad ray file header: {text[0]!r}") from None
    if file_n != n:
        raise InputError(f"ray file is for n={file_n}, expected n={n}")
    body = [ln for ln in text[1:] if ln.strip()]
    if len(body) != count:
        raise InputError(f"header announces {count} rays, file has {len(body)}")
    d = (1 << n) - 1
    order = display_order(n)
    R = np.zeros((count, d), dtype=np.int64)
    for r, ln in enumerate(body):
        try:
            vals = [int(tok) for tok in ln.split(",")]
        except ValueError:
            raise InputError(f"line {r + 2}: non-integer entry") from None
        if len(vals) != d:
            raise InputError(f"line {r + 2}: expected {d} entries, got {len(vals)}")
        for m, v in zip(order, vals):
            R[r, m - 1] = v
    g = np.gcd.reduce(np.abs(R), axis=1)
    if (g == 0).any():
        raise InputError("zero vector in ray file")
    R //= g[:, None]
    facets = facet_inequalities(n)
    ok = check_extreme(facets, R)
    if not ok.all():
        bad = int(np.flatnonzero(~ok)[0])
        raise InputError(f"line {bad + 2}: vector is not an extreme ray of the polymatroid cone")
    R = np.unique(R, axis=0)
    return _finish(facets.rows, R, n)


# isomorphism classes ----------------------------------------------------------------


def canonical_vectors(R: np.ndarray, n: int, chunk: int = 4096) -> np.ndarray:
    """Lexicographically least display vector over all relabellings, per row of R."""
    tables = np.array(permutation_tables(n), dtype=np.int64) - 1  # (perms, d) column indices
    m, d = R.shape
    canon = np.empty((m, d), dtype=R.dtype)
    for lo in range(0, m, chunk):
        block = R[lo : lo + chunk][:, tables]  # (c, perms, d)
        cand = np.ones(block.shape[:2], dtype=bool)
        for k in range(d):
            col = np.where(cand, block[:, :, k], np.iinfo(np.int64).max)
            cand &= block[:, :, k] == col.min(axis=1)[:, None]
        canon[lo : lo + chunk] = block[np.arange(block.shape[0]), cand.argmax(axis=1)]
    return canon


def orbit_size(vector: Sequence[int], n: int) -> int:
    """Number of distinct relabellings of a bitmask-order vector."""
    v = np.asarray(vector)
    tables = np.array(permutation_tables(n), dtype=np.int64) - 1
    return len(np.unique(v[tables], axis=0))


@dataclass(frozen=True)
class IsoClass:
    representative: ExtremeRay
    orbit_size: int
    member_count: int

    def rank_function(self) -> RankFunction:
        return self.representative.rank_function()


def classify_isomorphism(rays: Sequence[ExtremeRay]) -> list[IsoClass]:
    """Group rays by canonical form; classes sorted by canonical display vector."""
    if not rays:
        return []
    n = rays[0].n
    if any(r.n != n for r in rays):
        raise InputError("rays live on different ground sets")
    R = np.array([r.vector for r in rays], dtype=np.int64)
    canon = canonical_vectors(R, n)
    keys, counts = np.unique(canon, axis=0, return_counts=True)
    facets = facet_inequalities(n)
    order = display_order(n)
    classes = []
    for key, cnt in zip(keys, counts):
        vec = [0] * len(key)
        for m, v in zip(order, key.tolist()):
            vec[m - 1] = int(v)
        tight = frozenset(np.flatnonzero(facets.rows @ np.array(vec) == 0).tolist())
        classes.append(IsoClass(ExtremeRay(tuple(vec), tight), orbit_size(vec, n), int(cnt)))
    return classes


# elimination filter ---------------------------------------------------------------


@dataclass(frozen=True)
class Elimination:
    iso: IsoClass
    rule: str  # "a": intersecting non-modular flats; "b": disjoint flats, non-principal cut
    pair: tuple[Subset, Subset]
    defect: Fraction
    cut: ModularCut | None = None

    def recheck(self) -> bool:
        """Re-validate the witness from scratch."""
        f = self.iso.rank_function()
        a, b = self.pair
        from .flats import is_flat

        if not (is_flat(f, a) and is_flat(f, b)) or modular_defect(f, a, b) != self.defect or self.defect <= 0:
            return False
        if self.rule == "a":
            return bool(a & b)
        from .cuts import generate_modular_cut

        cut = generate_modular_cut(f, (a, b))
        return not a & b and cut == self.cut and not is_principal_cut(cut)


@dataclass
class FilterResult:
    survivors: list[IsoClass]
    eliminated: list[Elimination]


def eliminate(iso: IsoClass) -> Elimination | None:
    """Rule (a) first, then rule (b); witnesses are the first in larger-flats-first order."""
    f = iso.rank_function()
    for a, b in nonmodular_flat_pairs_desc(f, intersecting=True):
        return Elimination(iso, "a", (a, b), modular_defect(f, a, b))
    for a, b in nonmodular_flat_pairs_desc(f, intersecting=False):
        cut = separating_cut(f, a, b)
        if cut is not None:
            return Elimination(iso, "b", (a, b), modular_defect(f, a, b), cut)
    return None


def lemma_filter(classes: Sequence[IsoClass]) -> FilterResult:
    survivors, eliminated = [], []
    for iso in classes:
        hit = eliminate(iso)
        if hit is None:
            survivors.append(iso)
        else:
            eliminated.append(hit)
    return FilterResult(survivors, eliminated)


@dataclass
class SurvivorReport:
    linear: dict[tuple[int, ...], bool]
    star: dict[tuple[int, ...], str]

    @property
    def all_linear(self) -> bool:
        return all(self.linear.values())

    @property
    def any_violated(self) -> bool:
        return any(s == "violated" for s in self.star.values())

    @property
    def ok(self) -> bool:
        return self.all_linear and not self.any_violated


def verify_survivors(survivors: Sequence[IsoClass], classes: Sequence[IsoClass] | None = None) -> SurvivorReport:
    """is_linear on every survivor; check_star on every class (survivors when ``classes`` is None)."""
    linear = {}
    for iso in survivors:
        linear[iso.representative.display()] = is_linear(iso.rank_function())[0]
    star = {}
    for iso in classes if classes is not None else survivors:
        star[iso.representative.display()] = check_star(iso.rank_function()).status
    return SurvivorReport(linear, star)


def orbit_total(classes: Sequence[IsoClass]) -> int:
    return sum(c.orbit_size for c in classes)


def n_factorial(n: int) -> int:
    return factorial(n)
