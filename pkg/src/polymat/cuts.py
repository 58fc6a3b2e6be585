"""Modular cuts (collections of flats) and modular filters (collections of subsets).

Both are least fixpoints of the same two rules, upward closure and adding
the intersection of every modular member pair.  They differ only in the
universe the upward closure ranges over, so both share :class:`_Universe`,
which encodes member collections as bitmasks over universe indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .flats import closure, flats, sort_key
from .setfun import InputError, RankFunction, Subset


class _Universe:
    def __init__(self, rank: RankFunction, masks: Sequence[Subset]):
        f = rank.scaled
        self.masks = list(masks)
        self.index = {m: k for k, m in enumerate(self.masks)}
        size = len(self.masks)
        self.up = [0] * size
        self.modular = [0] * size
        self.meet = [[-1] * size for _ in range(size)]
        for k, a in enumerate(self.masks):
            for l, b in enumerate(self.masks):
                if a & b == a:
                    self.up[k] |= 1 << l
                if f[a] + f[b] == f[a | b] + f[a & b]:
                    self.modular[k] |= 1 << l
                self.meet[k][l] = self.index.get(a & b, -1)

    def encode(self, members: Iterable[Subset]) -> int:
        out = 0
        for m in members:
            out |= 1 << self.index[m]
        return out

    def decode(self, bits: int) -> frozenset[Subset]:
        return frozenset(self.masks[k] for k in _bits(bits))

    def upclose(self, bits: int) -> int:
        out = bits
        for k in _bits(bits):
            out |= self.up[k]
        return out

    def fixpoint(self, bits: int) -> int:
        bits = self.upclose(bits)
        while True:
            new = bits
            for k in _bits(bits):
                row = self.meet[k]
                for l in _bits(bits & self.modular[k] & ~((2 << k) - 1)):
                    new |= 1 << row[l]
            if new == bits:
                return bits
            bits = self.upclose(new)

    def is_closed(self, bits: int) -> bool:
        if self.upclose(bits) != bits:
            return False
        for k in _bits(bits):
            for l in _bits(bits & self.modular[k]):
                if not bits >> self.meet[k][l] & 1:
                    return False
        return True


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@lru_cache(maxsize=1024)
def _flat_universe(rank: RankFunction) -> _Universe:
    return _Universe(rank, flats(rank).flats)


@lru_cache(maxsize=1024)
def _subset_universe(rank: RankFunction) -> _Universe:
    return _Universe(rank, sorted(range(rank.full + 1), key=sort_key))


@dataclass(frozen=True)
class ModularCut:
    members: frozenset[Subset]
    seeds: tuple[Subset, ...] = ()
    rank: RankFunction | None = field(default=None, compare=False, repr=False)

    def __contains__(self, mask):
        return mask in self.members

    def sorted(self) -> list[Subset]:
        return sorted(self.members, key=sort_key)

    def meet(self) -> Subset:
        """Intersection of all members."""
        out = -1
        for m in self.members:
            out &= m
        return out


@dataclass(frozen=True)
class ModularFilter:
    members: frozenset[Subset]
    seeds: tuple[Subset, ...] = ()
    rank: RankFunction | None = field(default=None, compare=False, repr=False)

    def __contains__(self, mask):
        return mask in self.members

    def sorted(self) -> list[Subset]:
        return sorted(self.members, key=sort_key)


def generate_modular_cut(rank: RankFunction, seeds: Iterable[Subset]) -> ModularCut:
    """Smallest modular cut containing every seed (and hence M)."""
    seeds = tuple(seeds)
    uni = _flat_universe(rank)
    for s in seeds:
        if s not in uni.index:
            raise InputError(f"seed {rank.ground.name(s)} is not a flat")
    bits = uni.fixpoint(uni.encode(seeds + (rank.full,)))
    return ModularCut(uni.decode(bits), seeds, rank)


def is_principal_cut(cut: ModularCut) -> bool:
    return cut.meet() in cut.members


def is_modular_cut(rank: RankFunction, members: Iterable[Subset]) -> bool:
    """Check the three cut axioms for an explicit collection of flats."""
    members = set(members)
    uni = _flat_universe(rank)
    if rank.full not in members or any(m not in uni.index for m in members):
        return False
    return uni.is_closed(uni.encode(members))


def generate_modular_filter(rank: RankFunction, seeds: Iterable[Subset] = ()) -> ModularFilter:
    """Smallest modular filter containing the seeds and every spanning set."""
    seeds = tuple(seeds)
    uni = _subset_universe(rank)
    f = rank.scaled
    spanning = [m for m in uni.masks if f[m] == f[rank.full]]
    bits = uni.fixpoint(uni.encode(seeds) | uni.encode(spanning))
    return ModularFilter(uni.decode(bits), seeds, rank)


def is_modular_filter(rank: RankFunction, members: Iterable[Subset]) -> bool:
    members = set(members)
    f = rank.scaled
    if any(f[m] == f[rank.full] and m not in members for m in range(rank.full + 1)):
        return False
    uni = _subset_universe(rank)
    return uni.is_closed(uni.encode(members))


def cut_to_filter(rank: RankFunction, cut: ModularCut) -> ModularFilter:
    """The preimage {A : cl(A) ∈ cut}."""
    members = frozenset(a for a in range(rank.full + 1) if closure(rank, a) in cut.members)
    return ModularFilter(members, cut.seeds, rank)
