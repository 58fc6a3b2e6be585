"""Linear representations over prime fields GF(p)."""

from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .extend import ExcessFunction
from .setfun import GroundSet, InputError, RankFunction, Subset, elements

HEADER = "linrep v1"

Vector = tuple[int, ...]


@dataclass(frozen=True)
class LinearRepresentation:
    p: int
    d: int
    vectors: tuple[tuple[Vector, ...], ...]  # generators per ground-set element
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p**0.5) + 1)):
            raise InputError(f"p={self.p} is not prime")
        if not self.vectors:
            raise InputError("representation has no elements")
        for gens in self.vectors:
            for v in gens:
                if len(v) != self.d or any(not 0 <= x < self.p for x in v):
                    raise InputError(f"bad vector {v} for d={self.d}, p={self.p}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(string.ascii_lowercase[: len(self.vectors)]))

    @classmethod
    def build(cls, p: int, vectors: Sequence[Sequence[Sequence[int]]], d: int | None = None):
        if d is None:
            d = len(next(v for gens in vectors for v in gens))
        vecs = tuple(tuple(tuple(x % p for x in v) for v in gens) for gens in vectors)
        return cls(p, d, vecs)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(len(self.vectors), self.labels)

    def generators(self, mask: Subset) -> list[Vector]:
        return [v for i in elements(mask) for v in self.vectors[i]]


def row_reduce(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Reduced row echelon basis of the span of ``rows`` over GF(p)."""
    A = [[x % p for x in r] for r in rows]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in A:
        for piv, b in zip(pivots, basis):
            if r[piv]:
                c = r[piv]
                r = [(x - c * y) % p for x, y in zip(r, b)]
        nz = next((k for k, x in enumerate(r) if x), None)
        if nz is None:
            continue
        inv = pow(r[nz], p - 2, p)
        r = [x * inv % p for x in r]
        for k, b in enumerate(basis):
            if b[nz]:
                c = b[nz]
                basis[k] = [(x - c * y) % p for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(nz)
    return basis


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(row_reduce(rows, p))


def rank_from_representation(rep: LinearRepresentation) -> RankFunction:
    n = len(rep.vectors)
    return RankFunction.from_function(rep.ground, lambda m: rank_mod_p(rep.generators(m), rep.p))


def left_kernel(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {c : sum_i c_i rows_i = 0} over GF(p)."""
    k = len(rows)
    if k == 0:
        return []
    d = len(rows[0])
    # reduce [rows | I]; rows whose left part vanishes carry kernel vectors
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    red = row_reduce(aug, p)
    return [r[d:] for r in red if not any(r[:d])]


def intersect_spans(a: Sequence[Vector], b: Sequence[Vector], p: int) -> list[list[int]]:
    """Basis of span(a) ∩ span(b)."""
    ba, bb = row_reduce(a, p), row_reduce(b, p)
    if not ba or not bb:
        return []
    ker = left_kernel(ba + bb, p)
    d = len(ba[0])
    vecs = []
    for c in ker:
        v = [0] * d
        for coef, row in zip(c[: len(ba)], ba):
            if coef:
                v = [(x + coef * y) % p for x, y in zip(v, row)]
        vecs.append(v)
    return row_reduce(vecs, p)


def intersection_extension(rep: LinearRepresentation, x: Subset, y: Subset) -> ExcessFunction:
    """Excess of the extension by the subspace span(V_X) ∩ span(V_Y)."""
    meet = [tuple(v) for v in intersect_spans(rep.generators(x), rep.generators(y), rep.p)]
    rank = rank_from_representation(rep)
    vals = []
    for a in range(rank.full + 1):
        gens = rep.generators(a)
        vals.append(rank_mod_p(gens + meet, rep.p) - rank_mod_p(gens, rep.p))
    return ExcessFunction(rank, tuple(vals))


# file format -----------------------------------------------------------------------


def format_representation(rep: LinearRepresentation) -> str:
    lines = [f"{HEADER} p={rep.p} d={rep.d}"]
    for lab, gens in zip(rep.labels, rep.vectors):
        lines.append(f"{lab}: " + "; ".join(" ".join(str(x) for x in v) for v in gens))
    return "\n".join(lines) + "\n"


def parse_representation(text: str) -> LinearRepresentation:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError("empty representation file")
    head = lines[0].split()
    try:
        if " ".join(head[:2]) != HEADER:
            raise ValueError
        meta = dict(tok.split("=", 1) for tok in head[2:])
        p, d = int(meta["p"]), int(meta["d"])
    except (ValueError, KeyError):
        raise InputError(f"bad representation header: {lines[0]!r}") from None
    labels, vectors = [], []
    for ln in lines[1:]:
        if ":" not in ln:
            raise InputError(f"expected 'label: v1; v2', got {ln!r}")
        lab, rest = ln.split(":", 1)
        gens = []
        for chunk in rest.split(";"):
            if chunk.strip():
                try:
                    gens.append(tuple(int(t) for t in chunk.split()))
                except ValueError:
                    raise InputError(f"non-integer residue in {chunk!r}") from None
        labels.append(lab.strip())
        vectors.append(tuple(gens))
    return LinearRepresentation(p, d, tuple(vectors), tuple(labels))


def load_representation(path: str | Path) -> LinearRepresentation:
    return parse_representation(Path(path).read_text())
