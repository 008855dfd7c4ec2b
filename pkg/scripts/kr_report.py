#!/usr/bin/env python3
"""Reproduce the complete-pattern threshold table.

For K_r the leading minimum-degree coefficient of a perfect subdivision
tiling is 1 - 1/xi*(K_r), with an odd-order exception when the imbalance
gcd is exactly 2. This prints the computed parameters next to the published
coefficients and flags any mismatch.

Usage: python3 scripts/kr_report.py [--max R] [--json]
"""

import argparse
import sys

from subtile.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=8)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    argv = ["report", "--family", "kr", "--max", str(args.max)]
    if args.json:
        argv += ["--format", "json"]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
