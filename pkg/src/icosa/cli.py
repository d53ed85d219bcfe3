"""Command-line interface: ``icosa <verb> ...``.

Exit codes: 0 all claims pass, 1 a claim failed or a search was
inconclusive, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__

SUITE_NAMES = ("group", "arrangement", "invariants", "picard", "psi30", "descent", "symbolic", "all")
ORBITS = ("all", "double", "triple", "quintuple")


class UsageError(Exception):
    pass


def _write_json(path: str, data) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")


def _print_report(report) -> None:
    for cl in report.claims:
        print(f"[{cl['status']:>12}] {cl['id']}: {cl['details']}")
    total = sum(report.timing_ms.values())
    print(f"{report.suite}: {'PASS' if report.ok else 'FAIL'} ({len(report.claims)} claims, {total:.0f} ms)")


def cmd_verify(args) -> int:
    from .cache import CertificateCache
    from .suites import VerificationReport, replay_report, run_suite

    if args.replay:
        report = replay_report(VerificationReport.from_json(json.loads(Path(args.replay).read_text())))
    else:
        if args.suite not in SUITE_NAMES:
            raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
        report = run_suite(args.suite, cache=None if args.no_cache else CertificateCache())
    _print_report(report)
    if args.json:
        _write_json(args.json, report.to_json())
    return 0 if report.ok else 1


def cmd_alpha(args) -> int:
    from .cache import CertificateCache
    from .picard import certified_lower_bound
    from .symbolic import Inconclusive, alpha

    if args.m < 1:
        raise UsageError("--m must be positive")
    cache = CertificateCache()
    cert = None if args.no_cache or args.max_degree is not None else cache.get(args.orbit, args.m)
    source = "cache (re-validated)" if cert is not None else "computed"
    if cert is None:
        try:
            cert = alpha(args.orbit, args.m, max_degree=args.max_degree)
        except Inconclusive as e:
            print(f"inconclusive: {e}")
            if args.json:
                _write_json(args.json, {"orbit": args.orbit, "m": args.m, "status": "inconclusive",
                                        "partial": e.partial})
            return 1
        problems = cert.validate()
        if problems:
            print("certificate invalid: " + "; ".join(problems))
            return 1
        cache.put(cert)
    bound = certified_lower_bound(args.orbit)
    print(f"alpha(I^({args.m})) for {args.orbit} points = {cert.alpha}")
    print(f"ratio alpha/m = {cert.ratio}  (certified lower bound {bound})")
    print(f"upper witness: degree {cert.upper_witness.degree}, {len(cert.upper_witness.terms)} terms")
    if cert.lower_prime is not None:
        print(f"lower witness: degree {cert.alpha - 1} system has full column rank "
              f"{len(cert.minor_cols)} mod p = {cert.lower_prime} (w -> {cert.lower_root})")
    print(f"source: {source}")
    if args.json:
        _write_json(args.json, {"status": "pass", "certificate": cert.to_json()})
    return 0 if cert.ratio >= bound else 1


def cmd_intersect(args) -> int:
    from .picard import intersect, parse_class

    print(intersect(parse_class(args.c1), parse_class(args.c2)))
    return 0


def cmd_chi(args) -> int:
    from .picard import euler_char, parse_class

    print(euler_char(parse_class(args.cls)))
    return 0


# upper evidence from explicit curves: (degree, multiplicity) with a witness name
UPPER = {"double": (6, 2, "phi6"), "triple": (6, 2, "psi6'"), "quintuple": (12, 5, "degree-12 invariant")}


def cmd_bounds(args) -> int:
    from .picard import certified_lower_bound, sandwich

    lower = certified_lower_bound(args.orbit)
    print(f"certified lower bound: {lower}")
    if args.orbit == "all":
        rows = sandwich(args.k_max)
        print("upper evidence: chi(kD + 2H) > 0 gives curves of degree 55k+2 with multiplicity 10k")
        print(f"{'k':>4}  {'(55k+2)/(10k)':>14}  {'chi(kD+2H)':>10}")
        shown = rows if len(rows) <= 12 else rows[:10] + rows[-2:]
        for k, r, chi in shown:
            print(f"{k:>4}  {str(r):>14}  {chi:>10}")
        upper = rows[-1][1]
        verdict = "11/2 (limit of the upper bounds equals the lower bound)" if lower == Fraction(11, 2) else "open"
        print(f"best upper bound (k = {args.k_max}): {upper}")
    else:
        d, m, name = UPPER[args.orbit]
        upper = Fraction(d, m)
        verdict = str(lower) if upper == lower else "open"
        print(f"upper bound: {upper} (witness {name}, degree {d}, multiplicity {m})")
    print(f"verdict: {verdict}")
    return 0


def cmd_render(args) -> int:
    from .arrangement import render_affine

    svg, summary = render_affine(patch=args.patch)
    Path(args.out).write_text(svg)
    print(json.dumps(summary, indent=2))
    if args.incidence:
        from .arrangement import build_arrangement

        _write_json(args.incidence, build_arrangement().to_json())
    return 0


def cmd_report(args) -> int:
    from .cache import CertificateCache
    from .suites import run_suite

    report = run_suite(args.suite, cache=CertificateCache())
    _write_json(args.json, report.to_json())
    _print_report(report)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icosa", description="Exact checks for the icosahedral 15-line arrangement.")
    p.add_argument("--version", action="version", version=f"icosa {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?", default="all", help=", ".join(SUITE_NAMES))
    v.add_argument("--json", metavar="PATH")
    v.add_argument("--replay", metavar="REPORT", help="re-validate the witnesses stored in a JSON report")
    v.add_argument("--no-cache", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("alpha", help="certified initial degree of a symbolic power")
    a.add_argument("--orbit", choices=ORBITS, required=True)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--max-degree", type=int)
    a.add_argument("--json", metavar="PATH")
    a.add_argument("--no-cache", action="store_true")
    a.set_defaults(func=cmd_alpha)

    i = sub.add_parser("intersect", help="intersection number of two classes")
    i.add_argument("c1")
    i.add_argument("c2")
    i.set_defaults(func=cmd_intersect)

    c = sub.add_parser("chi", help="Euler characteristic of a class")
    c.add_argument("cls")
    c.set_defaults(func=cmd_chi)

    b = sub.add_parser("bounds", help="Waldschmidt constant bounds for a point set")
    b.add_argument("--orbit", choices=ORBITS, default="all")
    b.add_argument("--k-max", type=int, default=100)
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("render", help="SVG picture of an affine chart")
    r.add_argument("--patch", default="y - w*z", help="linear form sent to infinity")
    r.add_argument("--out", required=True)
    r.add_argument("--incidence", metavar="PATH", help="also dump the incidence data as JSON")
    r.set_defaults(func=cmd_render)

    rep = sub.add_parser("report", help="run suites and write a JSON report")
    rep.add_argument("--json", required=True, metavar="PATH")
    rep.add_argument("--suite", default="all", choices=SUITE_NAMES)
    rep.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
