#!/usr/bin/env python3
"""Reconstruct every table eigenvalue from its parameter string and compare
against the stored reference values at (2) and (sqrt(-3))."""

import argparse

from hermhecke import arthur
from hermhecke.eisenstein import ideal_above
from hermhecke.fixtures import FixtureSet


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tag", choices=["t2", "t3", "both"], default="both")
    args = ap.parse_args()

    fx = FixtureSet.load()
    ideals = {}
    if args.tag in ("t2", "both"):
        ideals["t2"] = ideal_above(2)
    if args.tag in ("t3", "both"):
        ideals["t3"] = ideal_above(3)
    report = arthur.verify_table(fx.store, fx.eigen_table, ideals)
    bad = 0
    for tag, col in report.items():
        for label in sorted(col):
            status = col[label]
            if status != "match":
                bad += status == "mismatch"
                print(f"{tag} label {label}: {status}")
        n_match = sum(1 for v in col.values() if v == "match")
        print(f"{tag}: {n_match}/{len(col)} match")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
