"""Absorber and exchanger gadget graphs, with anchor labels and verified
tiling properties.

All gadgets grow out of the 1-subdivision of the pattern (every edge gets
one fresh interior vertex). The canonical attachment edge is fixed by a
deterministic rule so that every gadget is reproducible: the smallest
non-isolated branch vertex together with its smallest-index interior
neighbor. Freshly added vertices always take the highest indices, in the
documented role order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import SearchBudget, ensure_budget
from .certs import check_subdivision_certificate
from .errors import EmptyPattern, SearchBudgetExceeded
from .graphs import Graph, Bipartition, bipartition, parse_graph
from .embed import find_spanning_subdivision, is_subdivision
from .tiling import find_perfect_subdivision_tiling, verify_tiling

GADGET_KINDS = ("H1", "T1", "T1HAT", "T2", "T2HAT",
                "T3", "T3HAT", "T3TILDE", "S", "SHAT")

BIPARTITE_KINDS = ("H1", "T1", "S", "T3TILDE")

_ROLE_ORDER = ("x", "y", "w", "z", "xp", "yp", "x0", "y0", "u", "v")


@dataclass(frozen=True)
class GadgetGraph:
    kind: str
    graph: Graph
    anchors: tuple[tuple[str, int], ...]
    branch_map: tuple[tuple[int, int], ...]

    def anchor(self, role: str) -> int:
        return dict(self.anchors)[role]


def expected_order(h: Graph, kind: str) -> int:
    n = h.order + h.e
    return {
        "H1": n, "T1": n + 2, "T1HAT": n + 4, "T2": n, "T2HAT": n + 1,
        "T3": 2 * n + 2, "T3HAT": 2 * n + 3, "T3TILDE": 2 * n,
        "S": n - 1, "SHAT": n + 1,
    }[kind]


def one_subdivision(h: Graph) -> Graph:
    """The 1-subdivision: interior vertex v(H)+i for edge i."""
    edges = []
    for i, (u, v) in enumerate(h.edges):
        s = h.order + i
        edges.extend(((u, s), (v, s)))
    return Graph(h.order + h.e, tuple(edges))


def canonical_h1_edge(h: Graph) -> tuple[int, int]:
    """Canonical edge (x, y) of the 1-subdivision: x is the smallest branch
    vertex with an edge, y its smallest-index interior neighbor."""
    x = min(u for edge in h.edges for u in edge)
    y = h.order + min(i for i, edge in enumerate(h.edges) if x in edge)
    return x, y


def _require(h: Graph) -> None:
    if h.e == 0:
        raise EmptyPattern("pattern has no edges")


def build_gadget(h: Graph, kind: str) -> GadgetGraph:
    """Construct the named gadget with anchors and branch map."""
    _require(h)
    kind = str(kind)
    if kind not in GADGET_KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}")
    n = h.order + h.e
    branch = tuple((u, u) for u in range(h.order))
    h1 = one_subdivision(h)

    if kind == "H1":
        return GadgetGraph(kind, h1, (), branch)

    x, y = canonical_h1_edge(h)

    if kind in ("T1", "T1HAT"):
        # replace edge xy by the path x-w-z-y
        w, z = n, n + 1
        edges = [e for e in h1.edges if e != (min(x, y), max(x, y))]
        edges += [(x, w), (w, z), (z, y)]
        anchors = [("x", x), ("y", y), ("w", w), ("z", z)]
        if kind == "T1HAT":
            u, v = n + 2, n + 3
            edges += [(u, y), (u, w), (v, x), (v, z)]
            anchors += [("u", u), ("v", v)]
        order = n + (2 if kind == "T1" else 4)
        return GadgetGraph(kind, Graph(order, tuple(edges)),
                           tuple(anchors), branch)

    if kind in ("T2", "T2HAT"):
        anchors = [("x", x), ("y", y)]
        if kind == "T2":
            return GadgetGraph(kind, h1, tuple(anchors), branch)
        u = n
        edges = h1.edges + ((x, u), (y, u))
        anchors.append(("u", u))
        return GadgetGraph(kind, Graph(n + 1, tuple(edges)),
                           tuple(anchors), branch)

    if kind in ("T3", "T3HAT", "T3TILDE"):
        # first copy: intact 1-subdivision; second copy: T1, offset by n
        t1 = build_gadget(h, "T1")
        off = n
        xp, yp = x, y
        roles = dict(t1.anchors)
        tx, ty = roles["x"] + off, roles["y"] + off
        tw, tz = roles["w"] + off, roles["z"] + off
        edges = list(h1.edges)
        edges += [(a + off, b + off) for a, b in t1.graph.edges]
        edges += [(xp, tz), (yp, tw)]
        anchors = [("x", tx), ("y", ty), ("w", tw), ("z", tz),
                   ("xp", xp), ("yp", yp)]
        if kind == "T3HAT":
            u = 2 * n + 2
            edges += [(u, tx), (u, ty)]
            anchors.append(("u", u))
            return GadgetGraph(kind, Graph(2 * n + 3, tuple(edges)),
                               tuple(anchors), branch)
        if kind == "T3":
            return GadgetGraph(kind, Graph(2 * n + 2, tuple(edges)),
                               tuple(anchors), branch)
        # T3TILDE: drop {x, y} from T3 and compress indices
        keep = [p for p in range(2 * n + 2) if p not in (tx, ty)]
        remap = {old: new for new, old in enumerate(keep)}
        t3_edges = [e for e in edges
                    if tx not in e and ty not in e]
        tilde_edges = tuple((remap[a], remap[b]) for a, b in t3_edges)
        anchors = [("w", remap[tw]), ("z", remap[tz]),
                   ("xp", remap[xp]), ("yp", remap[yp])]
        branch_tilde = tuple((u, remap[u]) for u in range(h.order))
        return GadgetGraph(kind, Graph(2 * n, tilde_edges),
                           tuple(anchors), branch_tilde)

    # S / SHAT: delete the interior vertex of the smallest pattern edge
    x0, y0 = h.edges[0]
    z0 = h.order      # interior of edge index 0
    remap = {old: (old if old < z0 else old - 1)
             for old in range(n) if old != z0}
    s_edges = tuple(sorted((remap[a], remap[b]) for a, b in h1.edges
                           if z0 not in (a, b)))
    anchors = [("x0", x0), ("y0", y0)]
    if kind == "S":
        return GadgetGraph(kind, Graph(n - 1, s_edges), tuple(anchors), branch)
    u, v = n - 1, n
    edges = s_edges + ((x0, u), (y0, u), (x0, v), (y0, v))
    anchors += [("u", u), ("v", v)]
    return GadgetGraph(kind, Graph(n + 1, tuple(edges)), tuple(anchors), branch)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    status: str              # "pass" | "fail" | "undecided"
    certificate: object = None
    detail: str = ""


@dataclass(frozen=True)
class GadgetVerification:
    kind: str
    checks: tuple[PropertyCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)


def _check_bipartite(name: str, g: Graph) -> PropertyCheck:
    parts = bipartition(g)
    if isinstance(parts, Bipartition):
        return PropertyCheck(name, "pass", parts)
    return PropertyCheck(name, "fail", parts, "odd cycle found")


def _check_exact_subdivision(name: str, f: Graph, h: Graph,
                             budget: SearchBudget) -> PropertyCheck:
    try:
        cert = is_subdivision(f, h, budget)
    except SearchBudgetExceeded:
        return PropertyCheck(name, "undecided", None, "budget exceeded")
    if cert is None:
        return PropertyCheck(name, "fail", None, "no exact subdivision")
    if not check_subdivision_certificate(f, h, cert, "exact"):
        return PropertyCheck(name, "fail", cert, "certificate invalid")
    return PropertyCheck(name, "pass", cert)


def _check_spanning(name: str, g: Graph, h: Graph,
                    budget: SearchBudget) -> PropertyCheck:
    try:
        cert = find_spanning_subdivision(g, h, budget)
    except SearchBudgetExceeded:
        return PropertyCheck(name, "undecided", None, "budget exceeded")
    if cert is None:
        return PropertyCheck(name, "fail", None, "no spanning subdivision")
    if not check_subdivision_certificate(g, h, cert, "spanning"):
        return PropertyCheck(name, "fail", cert, "certificate invalid")
    return PropertyCheck(name, "pass", cert)


def _check_tiling(name: str, g: Graph, h: Graph,
                  budget: SearchBudget) -> PropertyCheck:
    try:
        cert = find_perfect_subdivision_tiling(g, h, budget, max_host=g.order)
    except SearchBudgetExceeded:
        return PropertyCheck(name, "undecided", None, "budget exceeded")
    if cert is None:
        return PropertyCheck(name, "fail", None, "no perfect tiling")
    result = verify_tiling(g, h, cert)
    if not result:
        return PropertyCheck(name, "fail", cert, f"certificate invalid: {result.reason}")
    return PropertyCheck(name, "pass", cert)


def verify_gadget(h: Graph, kind: str,
                  budget: SearchBudget | None = None) -> GadgetVerification:
    """Check the claimed structural properties of a gadget by exact search;
    every positive certificate is re-validated structurally."""
    budget = ensure_budget(budget)
    gg = build_gadget(h, kind)
    g = gg.graph
    checks: list[PropertyCheck] = []

    if g.order == expected_order(h, kind):
        checks.append(PropertyCheck("order_formula", "pass", g.order))
    else:
        checks.append(PropertyCheck("order_formula", "fail", g.order))

    if kind == "H1":
        checks.append(_check_bipartite("bipartite", g))
        checks.append(_check_exact_subdivision("exact_subdivision", g, h, budget))
    elif kind == "T1":
        checks.append(_check_bipartite("bipartite", g))
        checks.append(_check_exact_subdivision("exact_subdivision", g, h, budget))
        checks.append(_check_spanning("spanning_subdivision", g, h, budget))
    elif kind == "T1HAT":
        base = build_gadget(h, "T1").graph
        checks.append(_check_bipartite("base_bipartite", base))
        checks.append(_check_exact_subdivision("base_exact_subdivision", base, h, budget))
        checks.append(_check_spanning("base_spanning", base, h, budget))
        checks.append(_check_spanning("spanning_subdivision", g, h, budget))
    elif kind == "T2":
        checks.append(_check_exact_subdivision("exact_subdivision", g, h, budget))
        checks.append(_check_spanning("spanning_subdivision", g, h, budget))
    elif kind == "T2HAT":
        checks.append(_check_spanning("spanning_subdivision", g, h, budget))
    elif kind in ("T3", "T3HAT"):
        checks.append(_check_tiling("perfect_tiling", g, h, budget))
    elif kind == "T3TILDE":
        checks.append(_check_bipartite("bipartite", g))
    elif kind == "S":
        checks.append(_check_bipartite("bipartite", g))
    elif kind == "SHAT":
        roles = dict(gg.anchors)
        s_count = g.order - 2
        for role in ("u", "v"):
            verts = tuple(sorted(list(range(s_count)) + [roles[role]]))
            sub = g.induced(verts)
            checks.append(_check_exact_subdivision(
                f"s_plus_{role}_subdivision", sub, h, budget))
    return GadgetVerification(kind, tuple(checks))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def serialize_gadget(gg: GadgetGraph) -> str:
    from .graphs import serialize_graph

    lines = [serialize_graph(gg.graph).rstrip("\n")]
    lines.append(f"# kind {gg.kind}")
    roles = dict(gg.anchors)
    for role in _ROLE_ORDER:
        if role in roles:
            lines.append(f"# role {role} {roles[role]}")
    for hu, fu in gg.branch_map:
        lines.append(f"# branch {hu} {fu}")
    return "\n".join(lines) + "\n"


def parse_gadget(text: str) -> GadgetGraph:
    graph = parse_graph(text)
    kind = None
    anchors = []
    branch = []
    for raw in text.split("\n"):
        line = raw.strip()
        if not line.startswith("#"):
            continue
        parts = line[1:].split()
        if not parts:
            continue
        if parts[0] == "kind" and len(parts) == 2:
            kind = parts[1]
        elif parts[0] == "role" and len(parts) == 3:
            anchors.append((parts[1], int(parts[2])))
        elif parts[0] == "branch" and len(parts) == 3:
            branch.append((int(parts[1]), int(parts[2])))
    if kind is None:
        raise ValueError("gadget text lacks a '# kind' line")
    order = {role: i for i, role in enumerate(_ROLE_ORDER)}
    anchors.sort(key=lambda rv: order[rv[0]])
    return GadgetGraph(kind, graph, tuple(anchors), tuple(sorted(branch)))
