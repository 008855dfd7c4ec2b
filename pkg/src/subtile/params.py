"""Threshold-determining parameters of a pattern graph.

For a pattern H and a vertex split (X, Y), subdividing every edge inside X
and every edge inside Y exactly once yields a bipartite subdivision with
parts of sizes |X| + e(H[Y]) and |Y| + e(H[X]). The split value

    f(X) = (v + e(H[X]) + e(H[Y])) / (|X| + e(H[Y]))

measures how lopsided that subdivision is; its minimum xi over all 2^v
subsets, the achievable signed part differences C and their gcd, and the
combined parameter xi* drive every minimum-degree threshold this package
reproduces. All arithmetic is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from heapq import heappop, heappush

from .certs import SubdivisionCertificate
from .errors import EmptyPattern, InfiniteHcf, NotBipartiteError, PatternTooLarge
from .exact import INFINITY, HcfValue, Infinity, fmt_frac
from .graphs import Graph, Bipartition, bipartition, bits_tuple, mask_of

MAX_PATTERN_ORDER = 24


def _require_pattern(h: Graph) -> None:
    if h.e == 0:
        raise EmptyPattern("pattern has no edges")
    if h.order > MAX_PATTERN_ORDER:
        raise PatternTooLarge(
            f"subset enumeration is bounded at {MAX_PATTERN_ORDER} vertices, "
            f"got {h.order}")


def f_value(h: Graph, x_vertices) -> Fraction:
    """Split value of the subset X: (v + e(H[X]) + e(H[Y])) / (|X| + e(H[Y]))."""
    _require_pattern(h)
    mask = mask_of(x_vertices)
    if mask & ~h.full_mask:
        raise ValueError("subset contains out-of-range vertices")
    ein_x = h.induced_edge_count(mask)
    ein_y = h.induced_edge_count(h.full_mask & ~mask)
    return Fraction(h.order + ein_x + ein_y, mask.bit_count() + ein_y)


@dataclass(frozen=True)
class _SubsetScan:
    xi_num: int
    xi_den: int
    witness: tuple[int, ...]
    imbalances: tuple[int, ...]
    hcf: HcfValue


@lru_cache(maxsize=None)
def _subset_scan(h: Graph) -> _SubsetScan:
    """One Gray-code pass over all subsets: minimum split value with the
    canonical witness (smallest size, then lexicographically smallest set),
    and the full set of achievable signed imbalances."""
    _require_pattern(h)
    v = h.order
    e = h.e
    adj = h.adj
    full = h.full_mask

    mask = 0
    ein_x = 0
    ein_y = e
    best_num, best_den = v + e, e          # X = empty set
    best_key = (0, ())
    imbalances = {e - v}                    # d(empty) = e(H) - v
    for i in range(1, 1 << v):
        bit = (i & -i).bit_length() - 1
        low = 1 << bit
        if mask & low:                      # removing `bit` from X
            mask ^= low
            ein_x -= (adj[bit] & mask).bit_count()
            ein_y += (adj[bit] & (full & ~mask)).bit_count()
        else:                               # adding `bit` to X
            ein_x += (adj[bit] & mask).bit_count()
            ein_y -= (adj[bit] & (full & ~mask & ~low)).bit_count()
            mask ^= low
        size = mask.bit_count()
        num = v + ein_x + ein_y
        den = size + ein_y
        imbalances.add(den - (v - size) - ein_x)
        cmp = num * best_den - best_num * den
        if cmp < 0:
            best_num, best_den = num, den
            best_key = (size, bits_tuple(mask))
        elif cmp == 0:
            key = (size, bits_tuple(mask))
            if key < best_key:
                best_key = key

    nonzero = [abs(d) for d in imbalances if d != 0]
    hcf: HcfValue = math.gcd(*nonzero) if nonzero else INFINITY
    frac = Fraction(best_num, best_den)
    return _SubsetScan(frac.numerator, frac.denominator, best_key[1],
                       tuple(sorted(imbalances)), hcf)


def xi_with_witness(h: Graph) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum split value over all subsets and its canonical minimizer."""
    scan = _subset_scan(h)
    return Fraction(scan.xi_num, scan.xi_den), scan.witness


def imbalance_hcf(h: Graph) -> tuple[tuple[int, ...], HcfValue]:
    """Achievable signed part differences and the gcd of their absolute
    nonzero values; INFINITY when only 0 is achievable."""
    scan = _subset_scan(h)
    return scan.imbalances, scan.hcf


def xi_star(h: Graph) -> Fraction:
    xi, _ = xi_with_witness(h)
    _, hcf = imbalance_hcf(h)
    if hcf == 1:
        return xi
    if hcf == 2:
        return max(Fraction(3, 2), xi)
    return Fraction(2)


def threshold_coefficient(h: Graph, parity: str) -> Fraction:
    """Leading minimum-degree coefficient: 1 - 1/xi*, except that an
    imbalance gcd of exactly 2 forces 1/2 for odd-order hosts."""
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    _, hcf = imbalance_hcf(h)
    if hcf == 2 and parity == "odd":
        return Fraction(1, 2)
    return 1 - 1 / xi_star(h)


# ---------------------------------------------------------------------------
# Canonical inside-subdivided graphs: H*, hat components
# ---------------------------------------------------------------------------


def inside_subdivision(h: Graph, x_vertices) -> tuple[Graph, Bipartition, SubdivisionCertificate]:
    """Subdivide every edge inside X and inside Y = V \\ X exactly once.

    Returns the graph, its prescribed bipartition (side A = X plus the
    subdividers of Y-edges, side B = Y plus the subdividers of X-edges), and
    the tautological subdivision certificate. Originals keep their indices;
    subdividers are appended in canonical edge order.
    """
    x_mask = mask_of(x_vertices)
    edges = []
    routes = []
    side_a = x_mask
    side_b = h.full_mask & ~x_mask
    nxt = h.order
    for u, v in h.edges:
        u_in = bool(x_mask >> u & 1)
        v_in = bool(x_mask >> v & 1)
        if u_in != v_in:
            edges.append((u, v))
            routes.append(((u, v), (u, v)))
            continue
        s = nxt
        nxt += 1
        edges.extend(((u, s), (v, s)))
        routes.append(((u, v), (u, s, v)))
        if u_in:
            side_b |= 1 << s     # subdivider of an X-edge
        else:
            side_a |= 1 << s     # subdivider of a Y-edge
    graph = Graph(nxt, tuple(edges))
    parts = Bipartition(bits_tuple(side_a), bits_tuple(side_b))
    branch = tuple((u, u) for u in range(h.order))
    cert = SubdivisionCertificate(branch, tuple(sorted(routes)))
    return graph, parts, cert


def construct_h_star(h: Graph) -> tuple[Graph, Bipartition, tuple[tuple[int, int], ...]]:
    """The most lopsided canonical bipartite subdivision: inside-subdivide at
    the canonical minimizer of the split value."""
    _require_pattern(h)
    _, witness = xi_with_witness(h)
    graph, parts, cert = inside_subdivision(h, witness)
    return graph, parts, cert.branch_map


def chi_cr_bipartite(f: Graph) -> Fraction:
    """Critical chromatic number of a bipartite graph: v / (v - sigma),
    where sigma sums the smaller color class over components."""
    if f.e == 0:
        raise EmptyPattern("graph has no edges")
    parts = bipartition(f)
    if not isinstance(parts, Bipartition):
        raise NotBipartiteError("graph contains an odd cycle")
    a_mask = parts.mask_a()
    sigma = 0
    for comp in f.components:
        in_a = (comp & a_mask).bit_count()
        sigma += min(in_a, comp.bit_count() - in_a)
    return Fraction(f.order, f.order - sigma)


# ---------------------------------------------------------------------------
# Parameter report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamReport:
    xi: Fraction
    witness: tuple[int, ...]
    imbalances: tuple[int, ...]
    hcf: HcfValue
    xi_star: Fraction
    threshold_even: Fraction
    threshold_odd: Fraction


def param_report(h: Graph) -> ParamReport:
    xi, witness = xi_with_witness(h)
    imbalances, hcf = imbalance_hcf(h)
    star = xi_star(h)
    report = ParamReport(
        xi=xi,
        witness=witness,
        imbalances=imbalances,
        hcf=hcf,
        xi_star=star,
        threshold_even=threshold_coefficient(h, "even"),
        threshold_odd=threshold_coefficient(h, "odd"),
    )
    assert Fraction(1) < report.xi <= 2
    return report


def serialize_param_report(report: ParamReport) -> str:
    hcf = "INFINITY" if isinstance(report.hcf, Infinity) else str(report.hcf)
    lines = [
        "xi " + fmt_frac(report.xi),
        "witness" + ("" if not report.witness
                     else " " + " ".join(map(str, report.witness))),
        "imbalances " + " ".join(map(str, report.imbalances)),
        "hcf " + hcf,
        "xi_star " + fmt_frac(report.xi_star),
        "threshold_even " + fmt_frac(report.threshold_even),
        "threshold_odd " + fmt_frac(report.threshold_odd),
    ]
    return "\n".join(lines) + "\n"


def param_report_json(report: ParamReport) -> str:
    payload = {
        "xi": fmt_frac(report.xi),
        "witness": list(report.witness),
        "imbalances": list(report.imbalances),
        "hcf": "INFINITY" if isinstance(report.hcf, Infinity) else report.hcf,
        "xi_star": fmt_frac(report.xi_star),
        "threshold_even": fmt_frac(report.threshold_even),
        "threshold_odd": fmt_frac(report.threshold_odd),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Minimal imbalance witness (hat graph)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HatComponent:
    """One inside-subdivided copy inside a hat graph, in hat coordinates."""

    subset: tuple[int, ...]
    vertices: tuple[int, ...]
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    certificate: SubdivisionCertificate


@dataclass(frozen=True)
class HatGraph:
    """Disjoint union of canonical bipartite subdivisions of the pattern,
    oriented so side A is the small side; the imbalance is ``t``.

    ``construct_hat_h`` returns the minimum-order witness whose imbalance is
    the pattern's imbalance gcd. ``hat_from_recipe`` builds arbitrary
    witnesses (used for handcrafted reservoirs), where ``t`` is simply the
    achieved imbalance.
    """

    pattern: Graph
    graph: Graph
    parts: Bipartition
    small_side: int
    imbalance: int
    recipe: tuple[tuple[tuple[int, ...], int, int], ...]
    components: tuple[HatComponent, ...]


def hat_from_recipe(h: Graph,
                    recipe) -> HatGraph:
    """Assemble a hat graph from (subset, multiplicity, sign) entries.

    Sign +1 puts the component part containing X into the union's side B,
    sign -1 into side A. The result is normalized so |side A| <= |side B|.
    """
    _require_pattern(h)
    entries = [(tuple(sorted(x)), int(mult), int(sign)) for x, mult, sign in recipe]
    if not entries:
        raise ValueError("empty recipe")
    if any(mult < 1 or sign not in (-1, 1) for _, mult, sign in entries):
        raise ValueError("multiplicities must be >= 1 and signs in {-1, +1}")

    total_order = 0
    total_edges: list[tuple[int, int]] = []
    union_a: list[int] = []
    union_b: list[int] = []
    components = []
    for subset, mult, sign in entries:
        comp_graph, comp_parts, comp_cert = inside_subdivision(h, subset)
        for _ in range(mult):
            off = total_order
            total_order += comp_graph.order
            total_edges.extend((u + off, v + off) for u, v in comp_graph.edges)
            part_x = [u + off for u in comp_parts.side_a]   # contains X
            part_y = [u + off for u in comp_parts.side_b]
            if sign > 0:
                union_b.extend(part_x)
                union_a.extend(part_y)
                comp_a, comp_b = tuple(part_y), tuple(part_x)
            else:
                union_a.extend(part_x)
                union_b.extend(part_y)
                comp_a, comp_b = tuple(part_x), tuple(part_y)
            branch = tuple((hu, fu + off) for hu, fu in comp_cert.branch_map)
            routes = tuple(
                (edge, tuple(p + off for p in route))
                for edge, route in comp_cert.routes)
            components.append(HatComponent(
                subset=subset,
                vertices=tuple(range(off, off + comp_graph.order)),
                side_a=comp_a,
                side_b=comp_b,
                certificate=SubdivisionCertificate(branch, routes),
            ))

    if len(union_a) > len(union_b):
        union_a, union_b = union_b, union_a
        entries = [(x, m, -s) for x, m, s in entries]
        components = [
            HatComponent(c.subset, c.vertices, c.side_b, c.side_a,
                         c.certificate) for c in components
        ]
    graph = Graph(total_order, tuple(total_edges))
    parts = Bipartition(tuple(sorted(union_a)), tuple(sorted(union_b)))
    return HatGraph(
        pattern=h,
        graph=graph,
        parts=parts,
        small_side=len(union_a),
        imbalance=len(union_b) - len(union_a),
        recipe=tuple(entries),
        components=tuple(components),
    )


def construct_hat_h(h: Graph) -> HatGraph:
    """Minimum-order disjoint union of canonical bipartite subdivisions
    whose net imbalance equals the imbalance gcd of the pattern.

    Every bipartite subdivision of H with branch split (X, Y) subdivides
    inside edges an odd number of times and crossing edges an even number,
    so its part difference is exactly the canonical d(X) and its order is at
    least the canonical order (padding adds vertices to both sides equally).
    Minimizing over canonical components is therefore minimizing over all
    disjoint unions; the search is a shortest path over net-imbalance states
    with component order as the step weight.
    """
    _require_pattern(h)
    _, hcf = imbalance_hcf(h)
    if isinstance(hcf, Infinity):
        raise InfiniteHcf("every canonical split has imbalance 0")
    target = hcf

    v = h.order
    full = h.full_mask
    best_for_d: dict[int, tuple[int, tuple[int, ...]]] = {}
    for mask in range(1 << v):
        ein_x = h.induced_edge_count(mask)
        ein_y = h.induced_edge_count(full & ~mask)
        size = mask.bit_count()
        d = (size + ein_y) - ((v - size) + ein_x)
        if d <= 0:
            continue
        weight = v + ein_x + ein_y
        key = (weight, size, bits_tuple(mask))
        cur = best_for_d.get(d)
        if cur is None or key < (cur[0], len(cur[1]), cur[1]):
            best_for_d[d] = (weight, key[2])

    max_d = max(best_for_d)
    limit = target + 2 * max_d
    dist = {0: 0}
    pred: dict[int, tuple[int, int, int]] = {}
    heap = [(0, 0)]
    while heap:
        du, state = heappop(heap)
        if du > dist[state]:
            continue
        if state == target:
            break
        for d, (weight, _) in sorted(best_for_d.items()):
            for step, sign in ((d, 1), (-d, -1)):
                nxt = state + step
                if abs(nxt) > limit:
                    continue
                nd = du + weight
                if nxt not in dist or nd < dist[nxt]:
                    dist[nxt] = nd
                    pred[nxt] = (state, d, sign)
                    heappush(heap, (nd, nxt))
    if target not in dist:
        raise InfiniteHcf("imbalance target unreachable")  # cannot happen: gcd divides target

    steps: list[tuple[tuple[int, ...], int]] = []
    state = target
    while state != 0:
        prev, d, sign = pred[state]
        steps.append((best_for_d[d][1], sign))
        state = prev
    counted: dict[tuple[tuple[int, ...], int], int] = {}
    for subset, sign in steps:
        counted[(subset, sign)] = counted.get((subset, sign), 0) + 1
    recipe = tuple(sorted((subset, mult, sign)
                          for (subset, sign), mult in counted.items()))
    hat = hat_from_recipe(h, recipe)
    assert hat.imbalance == target
    return hat
