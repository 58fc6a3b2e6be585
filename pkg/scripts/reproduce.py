"""Run the full extremal-class verification and write a JSON certificate.

    python3 scripts/reproduce.py --max-n 5 --certificate cert.json
"""

import argparse
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from polymat.pipeline import recheck_certificate, verify_paper


@dataclass
class Config:
    max_n: int = 5
    rays_from: Path | None = None
    certificate: Path = Path("certificate.json")
    jobs: int = 1


def parse_args() -> Config:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--rays-from", type=Path)
    p.add_argument("--certificate", type=Path, default=Config.certificate)
    p.add_argument("--jobs", type=int, default=Config.jobs)
    return Config(**vars(p.parse_args()))


def main(cfg: Config) -> int:
    cert = verify_paper(cfg.max_n, cfg.rays_from, jobs=cfg.jobs)
    problems = recheck_certificate(cert)
    cfg.certificate.write_text(json.dumps(cert, indent=1) + "\n")
    for sec in cert["sections"]:
        print(f"n={sec['n']}: {sec['rays']} rays, {sec['classes']} classes, {sec['survivors']} survivors")
    print(f"verdict {cert['verdict']}; {len(problems)} witness problems; certificate at {cfg.certificate}")
    return 0 if cert["verdict"] == "PASS" and not problems else 1


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    raise SystemExit(main(parse_args()))
