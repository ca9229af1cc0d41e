#!/usr/bin/env python3
"""Enumerate the genus of the rank-12 sqrt(-3)-modular lattice by iterated
(2)-neighbours and recompute T_(2) two independent ways.

This is an hour-scale run in pure Python (millions of isometry
classifications); pass --allow-long to acknowledge that.  --archive saves
the representatives so later runs can reload instead of re-enumerating.
"""

import argparse
import sys
import time

from hermhecke.eisenstein import ideal_above
from hermhecke.fixtures import seed_sqrt3_rank12
from hermhecke.hecke import hecke_direct, hecke_intertwining
from hermhecke.neighbour import enumerate_genus, save_genus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--allow-long", action="store_true")
    ap.add_argument("--archive", metavar="DIR",
                    help="directory to save the genus representatives")
    ap.add_argument("--skip-direct", action="store_true",
                    help="only compute T_(2) by the intertwining route")
    args = ap.parse_args()
    if not args.allow_long:
        print("this enumeration takes hours; rerun with --allow-long",
              file=sys.stderr)
        raise SystemExit(3)

    P = ideal_above(2)
    L = seed_sqrt3_rank12()
    t0 = time.time()
    genus = enumerate_genus(L, P, progress=lambda m: print(m, flush=True))
    print(f"class number {genus.class_number}  aut orders {genus.aut_orders}")
    print(f"enumeration: {time.time() - t0:.0f}s")
    if args.archive:
        save_genus(genus, args.archive)
        print(f"archived to {args.archive}")

    Ti, data, sub = hecke_intertwining(genus, P)
    print(f"T_(2) via intertwining ({sub.class_number} sublattice classes):")
    for row in Ti.entries:
        print(" ", row)
    if not args.skip_direct:
        Td = hecke_direct(genus, P)
        print("direct computation agrees:", Td.entries == Ti.entries)


if __name__ == "__main__":
    main()
