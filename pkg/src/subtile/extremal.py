"""Certified lower-bound constructions: hosts with prescribed minimum degree
and no perfect subdivision tiling.

Three families, each refusing to build when its hypotheses fail:

P33  complete bipartite host with the small side one below the ratio
     threshold (any pattern);
P34  near-balanced complete bipartite host whose part difference defeats
     the imbalance gcd (gcd != 1; even orders additionally need gcd > 2);
P35  clique plus an off-by-one complete bipartite component (gcd exactly 2,
     even order).
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import SearchBudget
from .errors import PreconditionViolated, SearchBudgetExceeded
from .exact import Infinity
from .graphs import Graph, complete, complete_bipartite, disjoint_union
from .params import imbalance_hcf, xi_with_witness
from .tiling import (ObstructionCertificate, find_perfect_subdivision_tiling,
                     obstruction_certificate, validate_obstruction)

WHICH = ("P33", "P34", "P35")

SOLVER_BOUND = 10


@dataclass(frozen=True)
class ExtremalInstance:
    which: str
    n: int
    graph: Graph
    claimed_min_degree: int
    obstruction: ObstructionCertificate


def _formula_degree(which: str, h: Graph, n: int) -> int:
    if which == "P33":
        xi, _ = xi_with_witness(h)
        return int((1 - 1 / xi) * n) - 1
    if which == "P34":
        return n // 2 - 1 if n % 2 == 0 else n // 2
    if which == "P35":
        return n // 3 - 1
    raise ValueError(f"unknown construction {which!r}")


def construct_extremal(h: Graph, n: int, which: str) -> ExtremalInstance:
    """Build the named host on n vertices with its obstruction attached."""
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}")
    _, hcf = imbalance_hcf(h)

    if which == "P33":
        xi, _ = xi_with_witness(h)
        small = int((1 - 1 / xi) * n) - 1
        if small < 1:
            raise PreconditionViolated(
                f"n = {n} too small: floor((1 - 1/xi) n) - 1 = {small} < 1")
        g = complete_bipartite(small, n - small)
    elif which == "P34":
        if hcf == 1:
            raise PreconditionViolated("imbalance gcd is 1")
        if n % 2 == 0:
            if not isinstance(hcf, Infinity) and hcf <= 2:
                raise PreconditionViolated(
                    "even order requires imbalance gcd > 2")
            if n < 4:
                raise PreconditionViolated(f"n = {n} too small")
            g = complete_bipartite(n // 2 - 1, n // 2 + 1)
        else:
            if n < 3:
                raise PreconditionViolated(f"n = {n} too small")
            g = complete_bipartite(n // 2, n - n // 2)
    else:  # P35
        if hcf != 2:
            raise PreconditionViolated("imbalance gcd must be exactly 2")
        if n % 2 != 0:
            raise PreconditionViolated("order must be even")
        small = n // 3 - 1
        if small < 1:
            raise PreconditionViolated(f"n = {n} too small")
        g = disjoint_union(complete_bipartite(small, n // 3),
                           complete(n - (2 * (n // 3) - 1)))

    obstruction = obstruction_certificate(g, h)
    if obstruction is None:
        raise PreconditionViolated(
            "construction failed to produce an obstruction")
    return ExtremalInstance(which=which, n=n, graph=g,
                            claimed_min_degree=g.min_degree(),
                            obstruction=obstruction)


@dataclass(frozen=True)
class ExtremalVerification:
    checks: tuple[tuple[str, str, str], ...]   # (name, status, detail)

    @property
    def ok(self) -> bool:
        return all(status == "pass" for _, status, _ in self.checks)


def verify_extremal(inst: ExtremalInstance, h: Graph, brute_force: bool,
                    budget: SearchBudget | None = None,
                    solver_bound: int = SOLVER_BOUND) -> ExtremalVerification:
    """Re-validate degree, formula, obstruction; optionally confirm by the
    exhaustive solver (honored only for hosts within the solver bound)."""
    checks: list[tuple[str, str, str]] = []
    g = inst.graph

    actual = g.min_degree()
    checks.append(("min_degree", "pass" if actual == inst.claimed_min_degree
                   else "fail", f"claimed {inst.claimed_min_degree}, actual {actual}"))

    formula = _formula_degree(inst.which, h, inst.n)
    status = "pass" if (g.order == inst.n and actual >= formula) else "fail"
    checks.append(("degree_formula", status,
                   f"formula floor gives {formula}, actual {actual}"))

    result = validate_obstruction(g, h, inst.obstruction)
    checks.append(("obstruction", "pass" if result.ok else "fail",
                   result.reason or ""))

    if brute_force:
        if g.order > solver_bound:
            checks.append(("brute_force", "skipped",
                           f"host order {g.order} exceeds bound {solver_bound}"))
        else:
            try:
                tiling = find_perfect_subdivision_tiling(g, h, budget)
            except SearchBudgetExceeded:
                checks.append(("brute_force", "undecided", "budget exceeded"))
            else:
                checks.append(("brute_force",
                               "pass" if tiling is None else "fail",
                               "solver agrees: no tiling" if tiling is None
                               else "solver found a tiling"))
    return ExtremalVerification(tuple(checks))


def serialize_extremal(inst: ExtremalInstance) -> str:
    from .graphs import serialize_graph

    ob = inst.obstruction
    summary = (f"ratio |Q|/|P| with |P|={len(ob.side_p)} |Q|={len(ob.side_q)}"
               if ob.kind == "ratio"
               else f"difference {ob.difference} vs hcf {ob.hcf}")
    lines = [serialize_graph(inst.graph).rstrip("\n"),
             f"# which {inst.which}",
             f"# n {inst.n}",
             f"# min_degree {inst.claimed_min_degree}",
             f"# obstruction {ob.kind}: {summary}"]
    return "\n".join(lines) + "\n"
