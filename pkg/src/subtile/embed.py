"""Exact decision procedures for subdivision structure.

The central kernel answers: does the host contain a subdivision of the
pattern whose vertex set is exactly a prescribed cover set? Pattern
vertices are placed connectivity-first with interchangeable-vertex symmetry
breaking, each pattern edge is routed through unused vertices as soon as
both endpoints are placed (shortest routes first), and the search prunes on
the supply of unused vertices against the remaining route demand.

Exact mode additionally requires the host to *be* the subdivision: branch
degrees match exactly, interiors have degree 2, and every host edge lies on
a route.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import SearchBudget, ensure_budget
from .certs import SubdivisionCertificate, check_subdivision_certificate
from .errors import EmptyPattern, SearchBudgetExceeded
from .graphs import Graph, Bipartition, bipartition, bits_tuple, iter_bits, mask_of


def twin_classes(h: Graph) -> tuple[int, ...]:
    """Class representative per vertex; within a class, any permutation of
    the vertices extends to an automorphism of ``h``.

    Vertices sharing an open neighborhood (non-adjacent interchangeable) or
    a closed neighborhood (adjacent interchangeable) are merged; chains of
    such transpositions generate the full symmetric group on each class, so
    forcing ascending images loses no embeddings.
    """
    parent = list(range(h.order))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for key_of in (lambda u: h.adj[u], lambda u: h.adj[u] | (1 << u)):
        groups: dict[int, int] = {}
        for u in range(h.order):
            k = key_of(u)
            if k in groups:
                union(groups[k], u)
            else:
                groups[k] = u
    return tuple(find(u) for u in range(h.order))


def _degree_dominates(host_degs: list[int], pat_degs: list[int]) -> bool:
    """Necessary degree-profile conditions for a spanning subdivision.

    Upward: enough host vertices of each degree >= d >= 3 (interiors only
    ever have degree 2). Downward: a host vertex of degree <= 1 cannot be an
    interior, so it must carry a pattern vertex of degree no larger than its
    own.
    """
    for d in range(3, max(pat_degs, default=0) + 1):
        if sum(1 for x in host_degs if x >= d) < sum(1 for x in pat_degs if x >= d):
            return False
    for d in (0, 1):
        if (sum(1 for x in host_degs if x <= d)
                > sum(1 for x in pat_degs if x <= d)):
            return False
    return True


class _SubdivisionSearch:
    """Interleaved placement and routing.

    Pattern vertices are placed connectivity-first (new vertex adjacent to
    an already-placed one whenever possible, high degree first); each
    pattern edge is routed as soon as both its endpoints are placed, so an
    impossible placement dies at the first unroutable edge instead of after
    a full branch assignment. Interchangeable pattern vertices (equal open
    or closed neighborhoods) take ascending images.
    """

    def __init__(self, g: Graph, h: Graph, cover: int, exact: bool,
                 budget: SearchBudget):
        self.g = g
        self.h = h
        self.cover = cover
        self.exact = exact
        self.budget = budget
        self.cover_verts = bits_tuple(cover)
        self.m = cover.bit_count()
        self.deg_in = [
            (g.adj[u] & cover).bit_count() if cover >> u & 1 else -1
            for u in range(g.order)
        ]
        self.classes = twin_classes(h)

        # Interleaved plan: ("assign", h_vertex) and ("route", h_edge) steps.
        placed_set: set[int] = set()
        steps: list[tuple[str, object]] = []
        remaining = set(range(h.order))
        while remaining:
            with_nbrs = [u for u in remaining
                         if any(w in placed_set for w in iter_bits(h.adj[u]))]
            pool = with_nbrs or sorted(remaining)
            u = min(pool, key=lambda t: (
                -sum(1 for w in iter_bits(h.adj[t]) if w in placed_set),
                -h.degree(t), self.classes[t], t))
            steps.append(("assign", u))
            remaining.discard(u)
            placed_set.add(u)
            for edge in h.edges:
                if u in edge and edge[0] in placed_set and edge[1] in placed_set:
                    steps.append(("route", edge))
        self.steps = steps
        self.assigns_after = [0] * (len(steps) + 1)
        for i in range(len(steps) - 1, -1, -1):
            self.assigns_after[i] = self.assigns_after[i + 1] + (
                1 if steps[i][0] == "assign" else 0)

        self.image = [-1] * h.order
        self.class_floor: dict[int, list[int]] = {}
        self.routes: dict[tuple[int, int], tuple[int, ...]] = {}
        if exact:
            self.interior_mask = mask_of(
                u for u in self.cover_verts if self.deg_in[u] == 2)
        else:
            self.interior_mask = cover

    def run(self) -> SubdivisionCertificate | None:
        g, h = self.g, self.h
        if self.m < h.order:
            return None
        supply = self.m - h.order
        if self.exact:
            cover_edges = sum(
                (g.adj[u] & self.cover).bit_count() for u in self.cover_verts) // 2
            if cover_edges != h.e + supply:
                return None
        if not _degree_dominates([self.deg_in[u] for u in self.cover_verts],
                                 list(h.degrees)):
            return None
        return self._step(0, 0, supply)

    def _step(self, pos: int, used: int, supply: int) -> SubdivisionCertificate | None:
        if pos == len(self.steps):
            if used == self.cover:
                branch = tuple(sorted(
                    (u, self.image[u]) for u in range(self.h.order)))
                routes = tuple(sorted(self.routes.items()))
                return SubdivisionCertificate(branch, routes)
            return None
        kind, payload = self.steps[pos]
        if kind == "assign":
            return self._assign(pos, payload, used, supply)
        return self._route(pos, payload, used, supply)

    def _assign(self, pos: int, u: int, used: int,
                supply: int) -> SubdivisionCertificate | None:
        h = self.h
        want = h.degree(u)
        cls = self.classes[u]
        stack = self.class_floor.setdefault(cls, [])
        floor = stack[-1] if stack else -1
        for x in self.cover_verts:
            if x <= floor or used >> x & 1:
                continue
            dx = self.deg_in[x]
            if dx < want or (self.exact and dx != want):
                continue
            self.budget.tick()
            self.image[u] = x
            stack.append(x)
            found = self._step(pos + 1, used | (1 << x), supply)
            stack.pop()
            if found is not None:
                return found
        self.image[u] = -1
        return None

    def _remaining_route_images(self, pos: int):
        for kind, payload in self.steps[pos:]:
            if kind == "route":
                a, b = payload
                yield self.image[a], self.image[b]

    def _route(self, pos: int, edge: tuple[int, int], used: int,
               supply: int) -> SubdivisionCertificate | None:
        g = self.g
        free = self.cover & ~used
        lb_rest = 0
        if self.assigns_after[pos] == 0:
            # All pattern vertices placed: every free vertex must become a
            # route interior, taking two distinct neighbors among free
            # vertices and unrouted endpoints.
            remaining_images = list(self._remaining_route_images(pos))
            endpoint_mask = 0
            for pa, pb in remaining_images:
                endpoint_mask |= 1 << pa | 1 << pb
            reachable = free | endpoint_mask
            rest = free
            while rest:
                low = rest & -rest
                rest ^= low
                if (g.adj[low.bit_length() - 1] & reachable).bit_count() < 2:
                    return None
            # Interiors never leave one component of the free subgraph, so
            # every free component needs an unrouted edge with both endpoint
            # images adjacent to it.
            rest = free
            while rest:
                seed = rest & -rest
                comp = seed
                while True:
                    grow = comp
                    scan = comp
                    while scan:
                        lo = scan & -scan
                        scan ^= lo
                        grow |= g.adj[lo.bit_length() - 1] & free
                    if grow == comp:
                        break
                    comp = grow
                rest &= ~comp
                contact = 0
                scan = comp
                while scan:
                    lo = scan & -scan
                    scan ^= lo
                    contact |= g.adj[lo.bit_length() - 1]
                if not any(contact >> pa & 1 and contact >> pb & 1
                           for pa, pb in remaining_images):
                    return None
            lb_rest = sum(1 for pa, pb in remaining_images[1:]
                          if not g.has_edge(pa, pb))
        a, b = edge
        pa, pb = self.image[a], self.image[b]
        k_max = supply - lb_rest
        k_min = 0 if g.has_edge(pa, pb) else 1
        for k in range(k_min, k_max + 1):
            cert = self._paths(pos, edge, pa, pb, k, free & self.interior_mask,
                               used, supply, (pa,))
            if cert is not None:
                return cert
        return None

    def _paths(self, pos: int, edge: tuple[int, int], cur: int, target: int,
               remaining: int, free: int, used: int, supply: int,
               acc: tuple[int, ...]) -> SubdivisionCertificate | None:
        g = self.g
        self.budget.tick()
        if remaining == 0:
            if not g.has_edge(cur, target):
                return None
            self.routes[edge] = acc + (target,)
            got = self._step(pos + 1, used, supply)
            if got is not None:
                return got
            del self.routes[edge]
            return None
        cands = g.adj[cur] & free
        while cands:
            low = cands & -cands
            cands ^= low
            w = low.bit_length() - 1
            got = self._paths(pos, edge, w, target, remaining - 1,
                              free & ~low, used | low, supply - 1,
                              acc + (w,))
            if got is not None:
                return got
        return None


def _degree_multiset_matches(f: Graph, h: Graph) -> bool:
    """Exact-mode precheck: degrees of F = degrees of H plus (v(F)-v(H)) twos."""
    from collections import Counter

    cf = Counter(f.degrees)
    ch = Counter(h.degrees)
    ch[2] += f.order - h.order
    return cf == +ch


def is_subdivision(f: Graph, h: Graph,
                   budget: SearchBudget | None = None) -> SubdivisionCertificate | None:
    """Certificate iff F is (isomorphic to) a subdivision of H, using all of
    F's vertices and edges. Deterministic search order."""
    budget = ensure_budget(budget)
    if f.order < h.order or f.e != h.e + (f.order - h.order):
        return None
    if not _degree_multiset_matches(f, h):
        return None
    return _SubdivisionSearch(f, h, f.full_mask, True, budget).run()


def find_spanning_subdivision(g: Graph, h: Graph,
                              budget: SearchBudget | None = None,
                              cover_mask: int | None = None) -> SubdivisionCertificate | None:
    """Certificate iff some subgraph of G is a subdivision of H covering
    exactly ``cover_mask`` (default: every vertex of G)."""
    budget = ensure_budget(budget)
    cover = g.full_mask if cover_mask is None else cover_mask
    return _SubdivisionSearch(g, h, cover, False, budget).run()


# ---------------------------------------------------------------------------
# Subdivision enumeration by per-edge lengths
# ---------------------------------------------------------------------------


def subdivide_edges(h: Graph, lengths: tuple[int, ...]) -> Graph:
    """Replace edge i of ``h`` by a path with ``lengths[i]`` fresh interior
    vertices (0 keeps the edge). Originals keep their indices; interiors are
    appended in canonical edge order."""
    if len(lengths) != h.e:
        raise ValueError("one length per edge required")
    edges = []
    nxt = h.order
    for (u, v), extra in zip(h.edges, lengths):
        if extra == 0:
            edges.append((u, v))
            continue
        chain = [u] + list(range(nxt, nxt + extra)) + [v]
        nxt += extra
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, tuple(edges))


def iter_subdivisions(h: Graph, max_order: int):
    """Yield (lengths, graph) for every per-edge length vector with total
    order at most ``max_order``. Distinct vectors may yield isomorphic
    graphs; no isomorphism dedup is attempted."""
    if h.e == 0:
        raise EmptyPattern("pattern has no edges")
    extra_budget = max_order - h.order
    if extra_budget < 0:
        return
    slots = h.e

    def rec(i: int, left: int, acc: tuple[int, ...]):
        if i == slots:
            yield acc
            return
        for take in range(left + 1):
            yield from rec(i + 1, left - take, acc + (take,))

    for lengths in rec(0, extra_budget, ()):
        yield lengths, subdivide_edges(h, lengths)


def enumerate_bipartite_subdivisions(
    h: Graph, max_order: int, max_results: int = 10**6
) -> list[tuple[Graph, Bipartition]]:
    """All bipartite subdivisions of ``h`` with at most ``max_order``
    vertices, one per length vector, each with its canonical bipartition."""
    if h.e == 0:
        raise EmptyPattern("pattern has no edges")
    if max_order < h.order:
        raise ValueError("max_order must be at least v(H)")
    out = []
    for _, sub in iter_subdivisions(h, max_order):
        parts = bipartition(sub)
        if isinstance(parts, Bipartition):
            out.append((sub, parts))
            if len(out) > max_results:
                raise SearchBudgetExceeded(
                    f"more than {max_results} bipartite subdivisions")
    return out


# ---------------------------------------------------------------------------
# Anchored subgraph embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnchoredCount:
    """Count of vertex sets completing a pinned gadget embedding.

    ``count`` is over vertex sets (two embeddings on the same set count
    once); ``embeddings`` is the raw embedding count, for diagnostics.
    """

    kind: str
    anchors: tuple[tuple[str, int], ...]
    count: int
    embeddings: int


def iter_subgraph_embeddings(host: Graph, pattern: Graph,
                             pins: dict[int, int],
                             budget: SearchBudget | None = None):
    """Yield all injective maps V(pattern) -> V(host) preserving edges and
    extending ``pins`` (pattern vertex -> host vertex). Extra host edges are
    allowed. Deterministic order."""
    budget = ensure_budget(budget)
    n = pattern.order
    placed_order = sorted(pins)
    remaining = [u for u in range(n) if u not in pins]
    # Most-constrained-first static order: prefer vertices adjacent to many
    # already-ordered ones, then high degree.
    ordered = list(placed_order)
    ordered_mask = mask_of(ordered)
    while remaining:
        best = min(
            remaining,
            key=lambda u: (-(pattern.adj[u] & ordered_mask).bit_count(),
                           -pattern.degree(u), u))
        ordered.append(best)
        ordered_mask |= 1 << best
        remaining.remove(best)

    image = {}
    for u in pins:
        x = pins[u]
        if not (0 <= x < host.order):
            raise ValueError(f"pin {u}->{x} out of host range")
    if len(set(pins.values())) != len(pins):
        raise ValueError("pins must be injective")

    def candidates(u: int, used: int) -> int:
        cand = host.full_mask & ~used
        for w in iter_bits(pattern.adj[u]):
            if w in image:
                cand &= host.adj[image[w]]
        return cand

    def rec(pos: int, used: int):
        if pos == len(ordered):
            yield dict(image)
            return
        u = ordered[pos]
        if u in pins:
            x = pins[u]
            if used >> x & 1 or not (candidates(u, used) >> x & 1):
                return
            image[u] = x
            budget.tick()
            yield from rec(pos + 1, used | (1 << x))
            del image[u]
            return
        cand = candidates(u, used)
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            image[u] = x
            budget.tick()
            yield from rec(pos + 1, used | low)
        image.pop(u, None)

    yield from rec(0, 0)


_ANCHOR_ROLES = {
    "T1HAT": ("u", "v"),
    "SHAT": ("u", "v"),
    "T2HAT": ("u",),
    "T3HAT": ("u",),
}


def count_anchored_gadgets(g: Graph, h: Graph, kind: str,
                           anchors: dict[str, int],
                           budget: SearchBudget | None = None) -> AnchoredCount:
    """Number of vertex sets A (disjoint from the anchor images) such that
    the gadget of the given kind embeds into G with the prescribed anchor
    images and the remaining vertices landing exactly on A."""
    from .gadgets import build_gadget  # local import: gadgets uses this module

    kind = str(kind)
    required = _ANCHOR_ROLES.get(kind)
    if required is None:
        raise ValueError(f"kind {kind} has no anchored-count semantics")
    if set(anchors) != set(required):
        raise ValueError(f"kind {kind} requires anchors {required}")
    gadget = build_gadget(h, kind)
    roles = dict(gadget.anchors)
    pins = {roles[r]: anchors[r] for r in required}
    budget = ensure_budget(budget)
    pin_images = set(pins.values())
    sets = set()
    raw = 0
    for image in iter_subgraph_embeddings(g, gadget.graph, pins, budget):
        raw += 1
        sets.add(frozenset(image.values()) - pin_images)
    return AnchoredCount(kind=kind,
                         anchors=tuple(sorted(anchors.items())),
                         count=len(sets), embeddings=raw)


def revalidate(f: Graph, h: Graph, cert: SubdivisionCertificate,
               mode: str = "spanning", cover_mask: int | None = None) -> bool:
    """Convenience wrapper over the independent structural checker."""
    return bool(check_subdivision_certificate(f, h, cert, mode, cover_mask))
