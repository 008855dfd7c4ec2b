"""Command-line front end.

Subcommands: params, gadget, tile, obstruct, extremal, hat, dominate,
absorb, report. Graph arguments are file paths in the edge-list format
(graph6 via --format graph6); when no such file exists and the argument
parses as a construction expression (K7, K(3,3), C4, P5, U(...)), the
expression is built instead.

Exit status: 0 = ran, asserted checks passed / decision emitted; 2 = usage
or input error; 3 = search budget exceeded. Decision outcomes (tiling
exists or not) are encoded in the output, not the exit status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import absorb, extremal, gadgets, params, tiling
from .errors import SearchBudgetExceeded, SubtileError
from .exact import Infinity, fmt_frac, parse_frac
from .graphs import Graph, build, parse_graph, serialize_graph

KR_EXPECTED: dict[int, tuple[Fraction, Fraction]] = {
    2: (Fraction(1, 3), Fraction(1, 3)),
    3: (Fraction(1, 2), Fraction(1, 2)),
    4: (Fraction(2, 5), Fraction(2, 5)),
    5: (Fraction(1, 3), Fraction(1, 3)),
    6: (Fraction(1, 2), Fraction(1, 2)),
    7: (Fraction(1, 3), Fraction(1, 2)),
}


def kr_expected(r: int) -> tuple[Fraction, Fraction]:
    """Published leading coefficients for complete patterns (1/2 from r = 8 on)."""
    if r in KR_EXPECTED:
        return KR_EXPECTED[r]
    if r >= 8:
        return (Fraction(1, 2), Fraction(1, 2))
    raise ValueError(f"no expected value for r = {r}")


def load_graph(arg: str, fmt: str = "edgelist") -> Graph:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_graph(fh.read(), fmt)
    try:
        return build(arg)
    except SubtileError:
        raise SubtileError(
            f"{arg!r} is neither a readable file nor a construction expression")


def _hcf_str(value) -> str:
    return "INFINITY" if isinstance(value, Infinity) else str(value)


def cmd_params(args) -> int:
    h = load_graph(args.graph, args.format)
    report = params.param_report(h)
    if args.json:
        sys.stdout.write(params.param_report_json(report))
    else:
        sys.stdout.write(params.serialize_param_report(report))
    return 0


def cmd_gadget(args) -> int:
    h = load_graph(args.graph, args.format)
    gg = gadgets.build_gadget(h, args.kind)
    sys.stdout.write(gadgets.serialize_gadget(gg))
    if args.verify:
        verification = gadgets.verify_gadget(h, args.kind)
        for check in verification.checks:
            print(f"check {check.name}: {check.status}"
                  + (f" ({check.detail})" if check.detail else ""))
        if not verification.ok:
            print("VERIFICATION FAILED")
            return 1
        print("VERIFICATION OK")
    return 0


def cmd_tile(args) -> int:
    from .certs import serialize_tiling_certificate

    g = load_graph(args.host, args.format)
    h = load_graph(args.pattern, args.format)
    cert = tiling.find_perfect_subdivision_tiling(g, h)
    if cert is None:
        print("NO TILING")
        return 0
    print("TILING FOUND")
    sys.stdout.write(serialize_tiling_certificate(cert))
    return 0


def cmd_obstruct(args) -> int:
    g = load_graph(args.host, args.format)
    h = load_graph(args.pattern, args.format)
    cert = tiling.obstruction_certificate(g, h)
    if cert is None:
        print("NO OBSTRUCTION (inconclusive: ratio and divisibility only)")
        return 0
    if cert.kind == "ratio":
        shown = "INFINITE" if cert.ratio is None else fmt_frac(cert.ratio)
        print(f"OBSTRUCTION ratio: |Q|/|P| = {shown} > {fmt_frac(cert.bound)}"
              f" with |P| = {len(cert.side_p)}, |Q| = {len(cert.side_q)}")
    else:
        print(f"OBSTRUCTION divisibility: |Q| - |P| = {cert.difference}"
              f" not divisible by hcf = {_hcf_str(cert.hcf)}")
    sys.stdout.write(tiling.serialize_obstruction(cert))
    return 0


def cmd_extremal(args) -> int:
    h = load_graph(args.pattern, args.format)
    inst = extremal.construct_extremal(h, args.n, args.which)
    sys.stdout.write(extremal.serialize_extremal(inst))
    verification = extremal.verify_extremal(inst, h, args.brute_force)
    for name, status, detail in verification.checks:
        print(f"check {name}: {status}" + (f" ({detail})" if detail else ""))
    if not verification.ok:
        print("VERIFICATION FAILED")
        return 1
    print("VERIFICATION OK")
    return 0


def cmd_hat(args) -> int:
    h = load_graph(args.pattern, args.format)
    hat = params.construct_hat_h(h)
    print(f"order {hat.graph.order}")
    print(f"sides {hat.small_side} {hat.small_side + hat.imbalance}")
    print(f"imbalance {hat.imbalance}")
    for subset, mult, sign in hat.recipe:
        print(f"component X={{{','.join(map(str, subset))}}}"
              f" multiplicity {mult} sign {'+' if sign > 0 else '-'}")
    sys.stdout.write(serialize_graph(hat.graph))
    return 0


def cmd_dominate(args) -> int:
    g = load_graph(args.graph, args.format)
    result = tiling.domination(g)
    print(f"exact {result.exact}")
    print("exact_set " + " ".join(map(str, result.exact_set or ())))
    print("greedy_set " + " ".join(map(str, result.greedy_set)))
    print(f"bound {fmt_frac(result.bound)}")
    print(f"bound_holds {result.bound_holds}")
    return 0


def cmd_absorb(args) -> int:
    with open(args.system, encoding="utf-8") as fh:
        system = absorb.parse_system(fh.read())
    selection = absorb.select_family(system, parse_frac(args.p), args.cap,
                                     args.seed)
    sys.stdout.write(absorb.serialize_selection(selection))
    report = absorb.verify_family(system, selection)
    for name, good, detail in report.checks:
        print(f"check {name}: {'pass' if good else 'fail'} ({detail})")
    print(f"coverage min {report.min_coverage} mean "
          + (fmt_frac(report.mean_coverage)
             if report.mean_coverage is not None else "-"))
    return 0 if report.ok else 1


def cmd_report(args) -> int:
    if args.family != "kr":
        raise SubtileError(f"unknown report family {args.family!r}")
    if args.max < 2:
        raise SubtileError("--max must be at least 2")
    rows = []
    from .graphs import complete

    for r in range(2, args.max + 1):
        h = complete(r)
        rep = params.param_report(h)
        expected = kr_expected(r)
        rows.append({
            "pattern": f"K{r}",
            "xi": fmt_frac(rep.xi),
            "hcf": "INFINITY" if isinstance(rep.hcf, Infinity) else rep.hcf,
            "xi_star": fmt_frac(rep.xi_star),
            "threshold_even": fmt_frac(rep.threshold_even),
            "threshold_odd": fmt_frac(rep.threshold_odd),
            "expected_even": fmt_frac(expected[0]),
            "expected_odd": fmt_frac(expected[1]),
            "match": (rep.threshold_even, rep.threshold_odd) == expected,
        })
    if args.report_format == "json":
        sys.stdout.write(json.dumps({"schema": 1, "rows": rows},
                                    indent=2, sort_keys=True) + "\n")
    else:
        header = ["pattern", "xi", "hcf", "xi_star", "threshold_even",
                  "threshold_odd", "expected_even", "expected_odd", "match"]
        print("\t".join(header))
        for row in rows:
            print("\t".join(str(row[key]) for key in header))
    return 0 if all(row["match"] for row in rows) else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subtile",
        description="Exact machinery for perfect subdivision tilings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("edgelist", "graph6"),
                       default="edgelist", help="graph file format")

    p = sub.add_parser("params", help="threshold parameter report")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("gadget", help="emit (and verify) a gadget graph")
    p.add_argument("graph")
    p.add_argument("--kind", required=True, choices=gadgets.GADGET_KINDS)
    p.add_argument("--verify", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("tile", help="decide a perfect subdivision tiling")
    p.add_argument("host")
    p.add_argument("pattern")
    add_format(p)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("obstruct", help="look for a certified obstruction")
    p.add_argument("host")
    p.add_argument("pattern")
    add_format(p)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("extremal", help="build a certified extremal host")
    p.add_argument("pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", required=True, choices=extremal.WHICH)
    p.add_argument("--brute-force", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("hat", help="minimal imbalance witness")
    p.add_argument("pattern")
    add_format(p)
    p.set_defaults(func=cmd_hat)

    p = sub.add_parser("dominate", help="exact domination number")
    p.add_argument("graph")
    add_format(p)
    p.set_defaults(func=cmd_dominate)

    p = sub.add_parser("absorb", help="seeded absorber family selection")
    p.add_argument("system")
    p.add_argument("--p", required=True, help="sampling probability p or p/q")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(func=cmd_absorb)

    p = sub.add_parser("report", help="threshold reproduction table")
    p.add_argument("--family", default="kr")
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--format", dest="report_format",
                   choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SubtileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
