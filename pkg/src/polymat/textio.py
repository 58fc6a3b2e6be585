"""Polymatroid text format: one rank vector per line, comma separated, subsets
by cardinality then alphabetically (a, b, ..., ab, ac, ...)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .setfun import InputError, RankFunction


def parse_vector(line: str) -> RankFunction:
    toks = [t.strip() for t in line.replace(";", ",").split(",")]
    toks = [t for t in toks if t]
    if not toks:
        raise InputError("empty rank vector")
    try:
        vals = [Fraction(t) for t in toks]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational rank vector: {line.strip()!r}") from None
    if any("." in t or "e" in t.lower() for t in toks):
        raise InputError("decimal ranks are not accepted; write rationals as p/q")
    return RankFunction.from_display(vals)


def parse_polymatroids(text: str) -> list[RankFunction]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_vector(line))
    if not out:
        raise InputError("no polymatroid found in input")
    return out


def format_vector(rank: RankFunction) -> str:
    return ",".join(str(v) for v in rank.display_vector())


def format_polymatroids(ranks: Iterable[RankFunction]) -> str:
    return "".join(format_vector(r) + "\n" for r in ranks)
