"""Closure operator and flats of a polymatroid."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .setfun import RankFunction, Subset, modular_defect, popcount


def closure(rank: RankFunction, a: Subset) -> Subset:
    """Largest superset of ``a`` with the same rank.

    By submodularity every element that does not raise f(a) can be added at once.
    """
    f = rank.scaled
    base = f[a]
    out = a
    for i in range(rank.n):
        bit = 1 << i
        if not a & bit and f[a | bit] == base:
            out |= bit
    return out


def is_flat(rank: RankFunction, a: Subset) -> bool:
    return closure(rank, a) == a


def sort_key(mask: Subset) -> tuple[int, int]:
    return popcount(mask), mask


@dataclass(frozen=True)
class FlatSet:
    rank: RankFunction
    flats: tuple[Subset, ...]

    def __iter__(self):
        return iter(self.flats)

    def __len__(self):
        return len(self.flats)

    def __contains__(self, mask):
        return mask in self.flats


@lru_cache(maxsize=4096)
def flats(rank: RankFunction) -> FlatSet:
    """All flats, ordered by (cardinality, bitmask)."""
    found = [m for m in range(rank.full + 1) if closure(rank, m) == m]
    return FlatSet(rank, tuple(sorted(found, key=sort_key)))


def nonmodular_flat_pairs(
    rank: RankFunction, intersecting_only: bool = False
) -> list[tuple[Subset, Subset, Fraction]]:
    """Unordered flat pairs with positive modular defect, in (cardinality, bitmask) pair order."""
    fl = flats(rank).flats
    out = []
    for i, a in enumerate(fl):
        for b in fl[i + 1 :]:
            if intersecting_only and not a & b:
                continue
            d = modular_defect(rank, a, b)
            if d > 0:
                out.append((a, b, d))
    return out
