"""Command-line driver.

Subcommands:
    verify all | quartic | pell [--ell N | --ell-range A..B] | weierstrass
    enumerate sections [--n-bound K] | enumerate q
    reduce --class "x,y,z" [--basis HLM|fev]
    orbit --len K

``--json PATH`` writes the report; the exit code is 0 iff no item has
status "fail" (a "discrepancy" does not fail the build), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import pell, quartic, weierstrass
from .chamber import ChamberError, reduce_to_chamber, orbit_of_anchor
from .lattice import LatticeError
from .report import PASS, FAIL, Report, ReportItem, timed_item

USAGE_ERROR = 2


def build_parser():
    p = argparse.ArgumentParser(
        prog="k3cert",
        description="exact verification suite for the quartic and Pell "
                    "lattice computations")
    sub = p.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=["all", "quartic", "pell", "weierstrass"])
    pv.add_argument("--ell", type=int, default=None)
    pv.add_argument("--ell-range", default=None, metavar="A..B")
    pv.add_argument("--entry-bound", type=int, default=300)
    pv.add_argument("--k-bound", type=int, default=5)
    pv.add_argument("--json", default=None, metavar="PATH")

    pe = sub.add_parser("enumerate", help="enumeration utilities")
    pe.add_argument("what", choices=["sections", "q"])
    pe.add_argument("--n-bound", type=int, default=3)
    pe.add_argument("--json", default=None, metavar="PATH")

    pr = sub.add_parser("reduce", help="reduce a class into the chamber")
    pr.add_argument("--class", dest="cls", required=True, metavar='"x,y,z"')
    pr.add_argument("--basis", choices=["HLM", "fev"], default="HLM")
    pr.add_argument("--json", default=None, metavar="PATH")

    po = sub.add_parser("orbit", help="orbit of the anchor class")
    po.add_argument("--len", dest="length", type=int, required=True)
    po.add_argument("--json", default=None, metavar="PATH")
    return p


def _parse_ell_range(text, parser):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        parser.error("--ell-range expects A..B with integers")
    if lo > hi:
        parser.error("--ell-range bounds out of order")
    return range(lo, hi + 1)


def _parse_class(text, parser):
    try:
        coords = tuple(int(c.strip()) for c in text.split(","))
    except ValueError:
        parser.error('--class expects integers like "x,y,z"')
    if len(coords) != 3:
        parser.error("--class expects exactly 3 coordinates")
    return coords


def cmd_verify(args, parser):
    report = Report()
    if args.suite in ("all", "quartic"):
        report.extend(quartic.full_section3_certificate().items)
    if args.suite in ("all", "pell"):
        if args.ell is not None and args.ell_range is not None:
            parser.error("give --ell or --ell-range, not both")
        if args.ell is not None:
            if args.ell <= 5:
                parser.error("--ell must exceed 5")
            ells = [args.ell]
        elif args.ell_range is not None:
            ells = _parse_ell_range(args.ell_range, parser)
            if any(e <= 5 for e in ells):
                parser.error("--ell-range values must exceed 5")
        else:
            ells = range(6, 13)
        report.extend(pell.full_section4_certificate(
            ells, entry_bound=args.entry_bound, k_bound=args.k_bound).items)
    if args.suite in ("all", "weierstrass"):
        report.extend(weierstrass.full_weierstrass_certificate().items)
    return report


def cmd_enumerate(args, parser):
    ctx = quartic.build_context()
    report = Report()
    if args.what == "sections":
        def run():
            sols, fit, zero = quartic.enumerate_sections(ctx, args.n_bound)
            a2, a1, a0 = fit
            return PASS, ("%d section classes in (f,e,v): %s; closed form "
                          "a(n) = %d n^2 + %d n + %d; zero section present: %s"
                          % (len(sols), sols, a2, a1, a0, zero))
        report.add(timed_item("prop-3.3-sections", "Prop 3.3(2)", run))
    else:
        def run():
            q = quartic.enumerate_Q_bruteforce(ctx)
            kinds = {a: quartic.classify_polarization(ctx, a) for a in q}
            return PASS, "Q = %s; classifications: %s" % (q, kinds)
        report.add(timed_item("lemma-3.9", "Lemma 3.9", run))
    return report


def cmd_reduce(args, parser):
    coords = _parse_class(args.cls, parser)
    ctx = quartic.build_context()
    if args.basis == "fev":
        coords = ctx.to_hlm(coords)
    report = Report()

    def run():
        trace = reduce_to_chamber(ctx.chamber, coords)
        return PASS, ("reduced to %s via wall word %s (basis HLM)"
                      % (trace.result, list(trace.word)))
    report.add(timed_item("reduce", "Lemma 3.10", run))
    return report


def cmd_orbit(args, parser):
    if args.length < 0:
        parser.error("--len must be nonnegative")
    ctx = quartic.build_context()
    report = Report()

    def run():
        orbit = orbit_of_anchor(ctx.chamber, args.length)
        return PASS, ("%d distinct classes up to word length %d: %s"
                      % (len(orbit), args.length, orbit))
    report.add(timed_item("orbit", "Lemma 3.13", run))
    return report


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = cmd_verify(args, parser)
        elif args.command == "enumerate":
            report = cmd_enumerate(args, parser)
        elif args.command == "reduce":
            report = cmd_reduce(args, parser)
        else:
            report = cmd_orbit(args, parser)
    except (ChamberError, LatticeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR
    print(report.render_text())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.dumps())
            fh.write("\n")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
