#!/usr/bin/env python3
"""Decompose the stored 20x20 Hecke matrices and scan for eigensystem
congruences via the denominator lemma.  Prints one line per verified pair."""

import argparse

from hermhecke import spectra
from hermhecke.fixtures import FixtureSet


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmin", type=int, default=11,
                    help="smallest modulus to report (default 11)")
    args = ap.parse_args()

    fx = FixtureSet.load()
    system = spectra.eigensystem([fx.t2_20x20, fx.t3_20x20],
                                 operator_names=("t2", "t3"),
                                 reference=fx.eigen_table)
    reports = spectra.scan_congruences_lemma(system, q_min=args.qmin)
    for r in reports:
        tag = f" (prime {r.prime_tag})" if r.prime_tag else ""
        note = " [block candidate]" if "residual-block-candidate" in r.evidence else ""
        print(f"labels {r.i} = {r.j}  mod {r.q}{tag}{note}")
    print(f"-- {len(reports)} congruences at q >= {args.qmin}")


if __name__ == "__main__":
    main()
