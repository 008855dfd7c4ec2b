#!/usr/bin/env python3
"""Sweep the certified lower-bound constructions over a range of host orders.

For each feasible (pattern, n, family) triple this builds the host, checks
its obstruction certificate, and (for hosts small enough) confirms with the
exhaustive solver that no perfect subdivision tiling exists.

Usage: python3 scripts/extremal_sweep.py [--pattern EXPR] [--n-max N]
"""

import argparse
import sys

from subtile import (PreconditionViolated, build, construct_extremal,
                     verify_extremal)
from subtile.extremal import SOLVER_BOUND, WHICH


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pattern", default="K7",
                        help="construction expression, e.g. K7 or K(1,3)")
    parser.add_argument("--n-min", type=int, default=6)
    parser.add_argument("--n-max", type=int, default=14)
    args = parser.parse_args()

    h = build(args.pattern)
    failures = 0
    for which in WHICH:
        for n in range(args.n_min, args.n_max + 1):
            try:
                inst = construct_extremal(h, n, which)
            except PreconditionViolated as exc:
                print(f"{which} n={n}: skipped ({exc})")
                continue
            brute = inst.graph.order <= SOLVER_BOUND
            rep = verify_extremal(inst, h, brute_force=brute)
            verdict = "ok" if rep.ok else "FAILED"
            if not rep.ok:
                failures += 1
            print(f"{which} n={n}: delta={inst.claimed_min_degree} "
                  f"obstruction={inst.obstruction.kind} "
                  f"brute={'yes' if brute else 'no'} -> {verdict}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
