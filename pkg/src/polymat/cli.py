"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical failure
(invalid polymatroid, mismatch, FAIL verdict).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cone import (
    BudgetExceeded,
    classify_isomorphism,
    enumerate_extreme_rays,
    export_rays,
    facet_inequalities,
    import_rays,
    lemma_filter,
)
from .extend import check_star, is_linear, validate_excess
from .flats import flats, nonmodular_flat_pairs
from .linrep import intersection_extension, load_representation, rank_from_representation
from .pipeline import recheck_certificate, verify_paper
from .setfun import InputError, modular_defect, validate_polymatroid
from .textio import format_vector, parse_polymatroids

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


def _read_input(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    path = Path(spec)
    if path.is_file():
        return path.read_text()
    return spec


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def cmd_validate(args) -> int:
    ranks = parse_polymatroids(_read_input(args.input))
    results, lines = [], []
    for f in ranks:
        rep = validate_polymatroid(f, args.mode)
        viol = [v.describe(f.ground) for v in rep.violations]
        results.append({"vector": format_vector(f), "valid": rep.valid, "violations": viol})
        lines.append(f"{format_vector(f)}: {'valid' if rep.valid else 'INVALID'}")
        lines.extend(f"  {v}" for v in viol[:20])
    _emit(args, {"results": results}, lines)
    return EXIT_OK if all(r["valid"] for r in results) else EXIT_FAIL


def analyze(f) -> dict:
    g = f.ground
    star = check_star(f)
    linear, failing = is_linear(f)
    out = {
        "vector": format_vector(f),
        "flats": [g.name(m) for m in flats(f)],
        "nonmodular_flat_pairs": [[g.name(a), g.name(b), str(d)] for a, b, d in nonmodular_flat_pairs(f)],
        "star": star.status,
        "witness": [g.name(m) for m in star.witness] if star.witness else None,
        "cut": [g.name(m) for m in star.cut.sorted()] if star.cut else None,
        "linear": linear,
        "failing_pair": [g.name(m) for m in failing] if failing else None,
    }
    return out


def cmd_analyze(args) -> int:
    reports, lines = [], []
    for f in parse_polymatroids(_read_input(args.input)):
        rep = validate_polymatroid(f, "facet")
        if not rep.valid:
            reports.append({"vector": format_vector(f), "valid": False})
            lines.append(f"{format_vector(f)}: not a polymatroid")
            continue
        r = analyze(f)
        reports.append(r)
        lines += [
            f"polymatroid {r['vector']}",
            f"  flats: {' '.join(r['flats'])}",
            f"  non-modular flat pairs: " + (", ".join(f"({a},{b}) defect {d}" for a, b, d in r["nonmodular_flat_pairs"]) or "none"),
            f"  star: {r['star']}" + (f" by ({','.join(r['witness'])}), cut {{{','.join(r['cut'])}}}" if r["witness"] else ""),
            f"  linear: {r['linear']}" + (f" (fails on {','.join(r['failing_pair'])})" if r["failing_pair"] else ""),
        ]
    _emit(args, {"results": reports}, lines)
    ok = all(r.get("valid", True) and r.get("star") != "violated" for r in reports)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rays(args) -> int:
    n = args.n
    if args.import_path:
        rays = import_rays(args.import_path, n)
    else:
        rays = enumerate_extreme_rays(facet_inequalities(n), budget_seconds=args.budget_seconds)
    if args.export:
        export_rays(args.export, rays, n)
    payload = {"n": n, "rays": len(rays)}
    lines = [f"n={n}: {len(rays)} extreme rays"]
    if args.classify or args.filter:
        classes = classify_isomorphism(rays)
        payload["classes"] = len(classes)
        payload["class_list"] = [",".join(map(str, c.representative.display())) for c in classes]
        lines.append(f"{len(classes)} isomorphism classes")
        if args.filter:
            res = lemma_filter(classes)
            payload["survivors"] = [",".join(map(str, c.representative.display())) for c in res.survivors]
            payload["eliminated"] = {"a": sum(e.rule == "a" for e in res.eliminated),
                                     "b": sum(e.rule == "b" for e in res.eliminated)}
            lines.append(f"{len(res.survivors)} survivors after elimination "
                         f"(rule a: {payload['eliminated']['a']}, rule b: {payload['eliminated']['b']})")
            lines.extend(f"  {v}" for v in payload["survivors"])
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    cert = verify_paper(args.max_n, args.rays_from, args.budget_seconds, args.jobs)
    problems = recheck_certificate(cert)
    cert["recheck_problems"] = problems
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(cert, indent=1) + "\n")
    lines = []
    for sec in cert["sections"]:
        lines.append(f"n={sec['n']}: {sec['rays']} rays, {sec['classes']} classes, {sec['survivors']} survivors")
        for c in sec["checks"]:
            lines.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['check']}: expected {c['expected']}, got {c['actual']}")
    lines.append(f"witness recheck: {'ok' if not problems else f'{len(problems)} problems'}")
    lines.append(f"verdict: {cert['verdict']}")
    _emit(args, cert, lines)
    return EXIT_OK if cert["verdict"] == "PASS" and not problems else EXIT_FAIL


def cmd_linrep_check(args) -> int:
    rep = load_representation(args.file)
    f = rank_from_representation(rep)
    valid = validate_polymatroid(f).valid
    witnesses_ok = True
    checked = 0
    for x in range(f.full + 1):
        for y in range(x + 1, f.full + 1):
            d = modular_defect(f, x, y)
            if d:
                e = intersection_extension(rep, x, y)
                checked += 1
                if not (validate_excess(f, e).valid and e(x) == 0 == e(y) and e(x & y) == d):
                    witnesses_ok = False
    payload = {"vector": format_vector(f), "valid": valid, "nonmodular_pairs": checked,
               "intersection_witnesses_ok": witnesses_ok}
    lines = [f"rank vector: {payload['vector']}", f"polymatroid: {valid}",
             f"intersection witnesses for {checked} non-modular pairs: {'ok' if witnesses_ok else 'FAILED'}"]
    ok = valid and witnesses_ok
    if args.expect:
        expected = parse_polymatroids(_read_input(args.expect))[0]
        match = expected == f
        payload["matches_expected"] = match
        lines.append(f"matches expected: {match}")
        ok = ok and match
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="polymat", description=__doc__.split("\n")[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check polymatroid axioms")
    s.add_argument("input", help="file, '-' for stdin, or a literal rank vector")
    s.add_argument("--mode", choices=("full", "facet"), default="full")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="flats, (*) status and linearity")
    s.add_argument("input")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("rays", parents=[common], help="extreme rays of the polymatroid cone")
    s.add_argument("n", type=int)
    s.add_argument("--import", dest="import_path", metavar="PATH")
    s.add_argument("--export", metavar="PATH")
    s.add_argument("--classify", action="store_true")
    s.add_argument("--filter", action="store_true")
    s.set_defaults(func=cmd_rays)

    s = sub.add_parser("verify-paper", parents=[common], help="rerun the extremal-class argument for n <= max-n")
    s.add_argument("--max-n", type=int, choices=(2, 3, 4, 5), default=5)
    s.add_argument("--rays-from", metavar="PATH", help="precomputed ray file for the largest n")
    s.add_argument("--certificate", metavar="PATH", help="write the JSON certificate here")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("linrep-check", parents=[common], help="rank function of a GF(p) representation")
    s.add_argument("file")
    s.add_argument("--expect", metavar="VECTOR", help="expected rank vector (file or literal)")
    s.set_defaults(func=cmd_linrep_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
