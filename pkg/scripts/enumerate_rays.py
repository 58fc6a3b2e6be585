"""Enumerate, classify and filter the extreme rays for one ground-set size.

    python3 scripts/enumerate_rays.py --n 5 --out rays5.txt

Writes the ray file (reusable via ``--rays-from``) and prints class counts and
the surviving class representatives.
"""

import argparse
import logging
import time
from dataclasses import dataclass, fields
from pathlib import Path

from polymat.cone import (
    classify_isomorphism,
    enumerate_extreme_rays,
    export_rays,
    facet_inequalities,
    import_rays,
    lemma_filter,
)


@dataclass
class Config:
    n: int = 4
    out: Path | None = None
    rays_from: Path | None = None
    budget_seconds: float | None = None


def parse_args() -> Config:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    for f in fields(Config):
        kind = {"n": int, "budget_seconds": float}.get(f.name, Path)
        p.add_argument("--" + f.name.replace("_", "-"), type=kind, default=f.default)
    return Config(**vars(p.parse_args()))


def report(step: int, total: int, count: int) -> None:
    logging.info("facet %d/%d: %d rays", step, total, count)


def main(cfg: Config) -> None:
    t0 = time.monotonic()
    if cfg.rays_from:
        rays = import_rays(cfg.rays_from, cfg.n)
    else:
        rays = enumerate_extreme_rays(facet_inequalities(cfg.n), budget_seconds=cfg.budget_seconds,
                                      progress=report)
    print(f"n={cfg.n}: {len(rays)} rays in {time.monotonic() - t0:.1f}s")
    if cfg.out:
        export_rays(cfg.out, rays, cfg.n)
    classes = classify_isomorphism(rays)
    res = lemma_filter(classes)
    by_rule = {r: sum(e.rule == r for e in res.eliminated) for r in "ab"}
    print(f"{len(classes)} classes; eliminated {by_rule}; {len(res.survivors)} survivors")
    for c in res.survivors:
        print("  " + ",".join(map(str, c.representative.display())))


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    main(parse_args())
