"""Command-line workbench tying the modules together.

Exit codes: 0 success, 2 invariant violation, 3 unsupported case.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import arthur, spectra, theta
from .coefficients import CoefficientStore, MissingCoefficientError
from .eisenstein import ideal_above
from .fixtures import FixtureSet, fixture_checksum
from .hecke import HeckeMatrix, hecke_direct, hecke_intertwining
from .lattice import HermitianLattice
from .neighbour import (UnsupportedCaseError, count_neighbours,
                        enumerate_genus, load_genus, neighbours, save_genus)

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_UNSUPPORTED = 3


def _ideal(p: int, conjugate: bool = False):
    ideal = ideal_above(p)
    return ideal.conjugate() if conjugate else ideal


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _reference_system():
    fx = FixtureSet.load()
    table = fx.eigen_table
    t2 = HeckeMatrix.from_json_dict({"prime": "2", "size": 20,
                                     "rows": fx.t2_20x20, "method": "fixture"})
    t3 = HeckeMatrix.from_json_dict({"prime": "1+2w", "size": 20,
                                     "rows": fx.t3_20x20, "method": "fixture"})
    return spectra.eigensystem([t2, t3], operator_names=("t2", "t3"),
                               reference=table), table, fx


def cmd_genus(args):
    L = HermitianLattice.load(args.lattice)
    if L.rank >= 8 and not args.allow_long:
        print("rank >= 8 genus enumeration needs --allow-long", file=sys.stderr)
        return EXIT_UNSUPPORTED
    progress = (lambda n: print(f"classes so far: {n}", file=sys.stderr)) \
        if args.verbose else None
    genus = enumerate_genus(L, _ideal(args.prime), progress=progress)
    if args.out:
        save_genus(genus, args.out)
    _emit({"class_number": genus.class_number,
           "aut_orders": genus.aut_orders,
           "discovery": genus.discovery_log})
    return EXIT_OK


def cmd_neighbours(args):
    L = HermitianLattice.load(args.lattice)
    ideal = _ideal(args.prime, args.conjugate)
    if args.count_only:
        lines, total = count_neighbours(L, ideal)
        _emit({"admissible_lines": lines, "count": total})
        return EXIT_OK
    ns = neighbours(L, ideal)
    _emit({"count": len(ns),
           "neighbours": [lat.to_json_dict() for lat in ns.neighbours]},
          args.out)
    return EXIT_OK


def cmd_hecke(args):
    if args.method == "fixture":
        fx = FixtureSet.load()
        rows = {"t2-20": fx.t2_20x20, "t3-20": fx.t3_20x20, "t2-5": fx.t2_5x5}
        if args.fixture not in rows:
            print(f"unknown fixture {args.fixture!r}; options {sorted(rows)}",
                  file=sys.stderr)
            return EXIT_INVARIANT
        _emit({"rows": rows[args.fixture]}, args.out)
        return EXIT_OK
    if not args.genus or args.prime is None:
        print("--genus and --prime are required for this method", file=sys.stderr)
        return EXIT_INVARIANT
    ideal = _ideal(args.prime)
    genus = load_genus(args.genus, ideal)
    if args.method == "direct":
        progress = (lambda i, n: print(f"class {i}: {n} neighbours",
                                       file=sys.stderr)) if args.verbose else None
        hm = hecke_direct(genus, ideal, progress=progress)
    else:
        hm, data, _ = hecke_intertwining(genus, ideal)
        if not data.verify():
            print("intertwining data failed verification", file=sys.stderr)
            return EXIT_INVARIANT
    _emit(hm.to_json_dict(), args.out)
    return EXIT_OK


def cmd_eigen(args):
    system, _, _ = _reference_system()
    _emit(system.to_json_dict(), args.out)
    return EXIT_OK


def cmd_congruences(args):
    system, _, _ = _reference_system()
    reports = spectra.scan_congruences_lemma(system, q_min=args.qmin)
    _emit(spectra.congruence_report_json(reports), args.out)
    return EXIT_OK


def cmd_arthur(args):
    store = CoefficientStore.load()
    ideals = {"t2": _ideal(2), "t3": _ideal(3)}
    if args.arthur_cmd == "verify-table":
        fx = FixtureSet.load()
        report = arthur.verify_table(store, fx.eigen_table, ideals)
        bad = [lab for col in report.values() for lab, st in col.items()
               if st == "mismatch"]
        _emit(report, args.out)
        return EXIT_INVARIANT if bad else EXIT_OK
    if args.arthur_cmd == "eval":
        param = arthur.parse_parameter(args.parameter)
        value = arthur.eigenvalue_at(param, _ideal(args.prime, args.conjugate), store)
        _emit({"parameter": args.parameter, "prime": args.prime, "value": str(value)})
        return EXIT_OK
    # congruence i j q
    fx = FixtureSet.load()
    rows = {r["label"]: r for r in fx.eigen_table}
    pi = arthur.parse_parameter(rows[args.i]["parameter"])
    pj = arthur.parse_parameter(rows[args.j]["parameter"])
    primes = [int(p) for p in args.primes.split(",")] if args.primes else [2, 3]
    report = arthur.verify_parameter_congruence(
        pi, pj, args.q, {f"({p})": _ideal(p) for p in primes}, store)
    _emit({f"{args.i} = {args.j} mod {args.q}": report})
    return EXIT_OK if all(v is True or isinstance(v, str) for v in report.values()) \
        else EXIT_INVARIANT


def cmd_theta(args):
    L = HermitianLattice.load(args.lattice)
    series = theta.theta_degree1(L, args.precision)
    _emit(series.to_json_dict(), args.out)
    for n in range(1, args.precision + 1):
        if series.r(n) % 6:
            print(f"r({n}) = {series.r(n)} is not divisible by 6", file=sys.stderr)
            return EXIT_INVARIANT
    return EXIT_OK


def cmd_fixtures(args):
    fx = FixtureSet.load()
    report = fixture_checksum(fx)
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_INVARIANT


def build_parser():
    p = argparse.ArgumentParser(prog="hermhecke")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized search order")
    p.add_argument("--jobs", type=int, default=1, help="worker cap (default: serial)")
    p.add_argument("--allow-long", action="store_true", dest="allow_long")
    p.add_argument("--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("genus")
    g.add_argument("lattice")
    g.add_argument("--prime", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_genus)

    nb = sub.add_parser("neighbours")
    nb.add_argument("lattice")
    nb.add_argument("--prime", type=int, required=True)
    nb.add_argument("--conjugate", action="store_true")
    nb.add_argument("--count-only", action="store_true", dest="count_only")
    nb.add_argument("--out")
    nb.set_defaults(func=cmd_neighbours)

    h = sub.add_parser("hecke")
    h.add_argument("--method", choices=["direct", "intertwining", "fixture"],
                   required=True)
    h.add_argument("--genus", help="directory of a saved genus enumeration")
    h.add_argument("--prime", type=int)
    h.add_argument("--fixture", default="t2-20")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hecke)

    e = sub.add_parser("eigen")
    e.add_argument("--input", default="fixtures")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eigen)

    c = sub.add_parser("congruences")
    c.add_argument("--qmin", type=int, default=11)
    c.add_argument("--out")
    c.set_defaults(func=cmd_congruences)

    a = sub.add_parser("arthur")
    asub = a.add_subparsers(dest="arthur_cmd", required=True)
    av = asub.add_parser("verify-table")
    av.add_argument("--out")
    av.set_defaults(func=cmd_arthur)
    ae = asub.add_parser("eval")
    ae.add_argument("parameter")
    ae.add_argument("--prime", type=int, required=True)
    ae.add_argument("--conjugate", action="store_true")
    ae.set_defaults(func=cmd_arthur)
    ac = asub.add_parser("congruence")
    ac.add_argument("i", type=int)
    ac.add_argument("j", type=int)
    ac.add_argument("q", type=int)
    ac.add_argument("--primes", help="comma-separated rational primes")
    ac.set_defaults(func=cmd_arthur)

    t = sub.add_parser("theta")
    t.add_argument("lattice")
    t.add_argument("--precision", type=int, default=4)
    t.add_argument("--out")
    t.set_defaults(func=cmd_theta)

    f = sub.add_parser("fixtures")
    f.add_argument("fixtures_cmd", choices=["check"])
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except (UnsupportedCaseError, arthur.UnsupportedCaseError,
            spectra.UnsupportedFieldError, MissingCoefficientError) as exc:
        print(f"unsupported case: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (spectra.PreconditionError, arthur.ParameterError, ValueError,
            AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
