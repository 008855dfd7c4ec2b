"""Finite simple undirected graphs on dense integer vertices.

Vertices are always 0..order-1 so that vertex subsets are plain ints used
as bitmasks; all search kernels in the package rely on that. Graphs are
immutable and hashable, edges are canonically sorted by (min, max), and the
text format round-trips byte-exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import ConstructionError, GraphFormatError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: ``order`` vertices, canonical edge tuple."""

    order: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"endpoint out of range in edge ({u}, {v})")
            norm.append((u, v) if u < v else (v, u))
        canon = tuple(sorted(norm))
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", canon)

    # -- basic counts ------------------------------------------------------

    @property
    def v(self) -> int:
        return self.order

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmask per vertex."""
        masks = [0] * self.order
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees) if self.order else 0

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.adj[u]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    # -- subset primitives -------------------------------------------------

    def induced_edge_count(self, mask: int) -> int:
        """Number of edges with both endpoints in ``mask``."""
        total = 0
        rest = mask
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            total += (self.adj[u] & rest).bit_count()
        return total

    def connected_in(self, mask: int) -> bool:
        """Is the induced subgraph on ``mask`` connected (empty counts as yes)?"""
        if mask == 0:
            return True
        seed = mask & -mask
        reach = seed
        while True:
            grow = reach
            rest = reach
            while rest:
                low = rest & -rest
                rest ^= low
                grow |= self.adj[low.bit_length() - 1] & mask
            if grow == reach:
                return reach == mask
            reach = grow

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Vertex masks of connected components, ordered by smallest vertex."""
        out = []
        seen = 0
        for s in range(self.order):
            if seen >> s & 1:
                continue
            reach = 1 << s
            frontier = reach
            while frontier:
                grow = 0
                rest = frontier
                while rest:
                    low = rest & -rest
                    rest ^= low
                    grow |= self.adj[low.bit_length() - 1]
                frontier = grow & ~reach
                reach |= frontier
            out.append(reach)
            seen |= reach
        return tuple(out)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def induced(self, vertices: tuple[int, ...]) -> "Graph":
        """Induced subgraph; vertex i of the result is ``vertices[i]``."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(vertices), tuple(edges))

    def __str__(self) -> str:
        return f"Graph(v={self.order}, e={self.e})"


def iter_bits(mask: int):
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def bits_tuple(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


# ---------------------------------------------------------------------------
# Bipartitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    """Two independent sides covering all vertices, every edge crossing.

    ``bipartition`` returns the canonical form (component rule below);
    constructions that prescribe their own sides return those verbatim.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return (len(self.side_a), len(self.side_b))

    def mask_a(self) -> int:
        return mask_of(self.side_a)

    def mask_b(self) -> int:
        return mask_of(self.side_b)


@dataclass(frozen=True)
class NotBipartite:
    """Negative outcome of ``bipartition``: an odd cycle as vertex sequence."""

    odd_cycle: tuple[int, ...]


def is_valid_bipartition(g: Graph, bip: Bipartition) -> bool:
    a, b = bip.mask_a(), bip.mask_b()
    if a & b or (a | b) != g.full_mask:
        return False
    return all((1 << u & a and 1 << v & b) or (1 << u & b and 1 << v & a)
               for u, v in g.edges)


def _two_color_component(g: Graph, start: int) -> tuple[int, int] | tuple[None, tuple[int, ...]]:
    """BFS 2-coloring from ``start``. Returns (color0-mask, color1-mask) or
    (None, odd-cycle witness)."""
    color = {start: 0}
    parent = {start: None}
    queue = [start]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for w in iter_bits(g.adj[u]):
            if w not in color:
                color[w] = color[u] ^ 1
                parent[w] = u
                queue.append(w)
            elif color[w] == color[u]:
                return None, _odd_cycle(parent, u, w)
    mask0 = mask_of(v for v, c in color.items() if c == 0)
    mask1 = mask_of(v for v, c in color.items() if c == 1)
    return mask0, mask1


def _odd_cycle(parent: dict, u: int, w: int) -> tuple[int, ...]:
    """Close the edge u-w against the BFS tree into an odd cycle."""
    path_u, path_w = [u], [w]
    seen = {u: 0}
    x = u
    while parent[x] is not None:
        x = parent[x]
        path_u.append(x)
        seen[x] = len(path_u) - 1
    x = w
    while x not in seen:
        x = parent[x]
        path_w.append(x)
    lca_idx = seen[x]
    cycle = path_u[:lca_idx] + [path_u[lca_idx]] + path_w[-2::-1]
    return tuple(cycle)


def bipartition(g: Graph) -> Bipartition | NotBipartite:
    """Canonical bipartition, or an odd-cycle witness.

    Component rule: within each component, the color class containing the
    component's smallest vertex goes to side A if it is the strictly smaller
    class, to side B if strictly larger, and to side A on ties.
    """
    side_a = 0
    side_b = 0
    for comp in g.components:
        start = (comp & -comp).bit_length() - 1
        mask0, mask1 = _two_color_component(g, start)
        if mask0 is None:
            return NotBipartite(odd_cycle=mask1)
        n0, n1 = mask0.bit_count(), mask1.bit_count()
        if n0 > n1:
            mask0, mask1 = mask1, mask0
        side_a |= mask0
        side_b |= mask1
    return Bipartition(bits_tuple(side_a), bits_tuple(side_b))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def complete(r: int) -> Graph:
    if r < 1:
        raise ConstructionError(f"K needs r >= 1, got {r}")
    return Graph(r, tuple((i, j) for i in range(r) for j in range(i + 1, r)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ConstructionError(f"K(a,b) needs a, b >= 1, got ({a}, {b})")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise ConstructionError(f"C needs k >= 3, got {k}")
    return Graph(k, tuple((i, (i + 1) % k) for i in range(k)))


def path(k: int) -> Graph:
    if k < 1:
        raise ConstructionError(f"P needs k >= 1, got {k}")
    return Graph(k, tuple((i, i + 1) for i in range(k - 1)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Disjoint union; second operand's vertices shifted by ``a.order``."""
    off = a.order
    return Graph(a.order + b.order,
                 a.edges + tuple((u + off, v + off) for u, v in b.edges))


_TOKEN = re.compile(r"\s*([KCPU]|\(|\)|,|\d+)")


def build(expr: str) -> Graph:
    """Build a graph from a construction expression.

    Grammar: ``K<r>`` | ``K(<a>,<b>)`` | ``C<k>`` | ``P<k>`` (path on k
    vertices) | ``U(e1,e2)`` (disjoint union, operands may nest).
    """
    tokens = []
    pos = 0
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m:
            if expr[pos:].strip():
                raise ConstructionError(f"cannot tokenize {expr[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    def expect(tok):
        if not tokens or tokens[0] != tok:
            raise ConstructionError(f"expected {tok!r} in {expr!r}")
        tokens.pop(0)

    def number() -> int:
        if not tokens or not tokens[0].isdigit():
            raise ConstructionError(f"expected a number in {expr!r}")
        return int(tokens.pop(0))

    def parse() -> Graph:
        if not tokens:
            raise ConstructionError(f"unexpected end of expression {expr!r}")
        head = tokens.pop(0)
        if head == "K":
            if tokens and tokens[0] == "(":
                tokens.pop(0)
                a = number()
                expect(",")
                b = number()
                expect(")")
                return complete_bipartite(a, b)
            return complete(number())
        if head == "C":
            return cycle(number())
        if head == "P":
            return path(number())
        if head == "U":
            expect("(")
            first = parse()
            expect(",")
            second = parse()
            expect(")")
            return disjoint_union(first, second)
        raise ConstructionError(f"unexpected token {head!r} in {expr!r}")

    g = parse()
    if tokens:
        raise ConstructionError(f"trailing tokens {tokens} in {expr!r}")
    return g


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def serialize_graph(g: Graph) -> str:
    """Canonical edge-list text: header ``<order> <edge-count>``, then one
    ``u v`` line per edge with u < v, sorted; LF newlines throughout."""
    lines = [f"{g.order} {g.e}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    """Parse the edge-list format (or one graph6 line with ``fmt='graph6'``).

    Errors carry the offending 1-based line number. Trailing ``#`` comment
    lines (as emitted for gadgets) are ignored.
    """
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt != "edgelist":
        raise ValueError(f"unknown graph format {fmt!r}")
    lines = text.split("\n")
    if not lines or not lines[0].strip():
        raise GraphFormatError("missing header", 1)
    header = lines[0].split()
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise GraphFormatError(f"malformed header {lines[0]!r}", 1)
    order, count = int(header[0]), int(header[1])
    edges = []
    seen = set()
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2 or not all(_INT.match(p) for p in parts):
            raise GraphFormatError(f"malformed edge line {raw!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if not (0 <= u < order and 0 <= v < order):
            raise GraphFormatError(f"endpoint out of range in ({u}, {v})", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
        edges.append(key)
    if len(edges) != count:
        raise GraphFormatError(
            f"header announces {count} edges but {len(edges)} given", 1)
    return Graph(order, tuple(edges))


_INT = re.compile(r"^\d+$")


def parse_graph6(text: str) -> Graph:
    """Decode one standard graph6 line (bytes 63..126, upper triangle bits
    column-major, 6 bits per byte MSB first)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 input", 1)
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphFormatError("graph6 byte out of range", 1)
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    elif len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        body = data[8:]
    else:
        raise GraphFormatError("truncated graph6 header", 1)
    need = n * (n - 1) // 2
    if len(body) * 6 < need:
        raise GraphFormatError("graph6 body too short", 1)
    bits = []
    for b in body:
        for shift in range(5, -1, -1):
            bits.append(b >> shift & 1)
    edges = []
    idx = 0
    for col in range(1, n):
        for row in range(col):
            if bits[idx]:
                edges.append((row, col))
            idx += 1
    return Graph(n, tuple(edges))
