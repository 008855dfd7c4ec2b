"""Witness objects and their search-free validators.

A subdivision certificate pins down branch images and one routed path per
pattern edge; a tiling certificate is a vertex partition with one spanning
certificate per block. Validators only re-check structure, they never
search, so they stay independent of the procedures that produced the
witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, mask_of


@dataclass(frozen=True)
class SubdivisionCertificate:
    """Witness that F hosts a subdivision of H.

    ``branch_map``: pairs (h-vertex, f-vertex), sorted by h-vertex.
    ``routes``: pairs ((hu, hv), path), path running from the image of hu
    to the image of hv, one route per H-edge, interiors fresh.
    """

    branch_map: tuple[tuple[int, int], ...]
    routes: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]

    def branch_dict(self) -> dict[int, int]:
        return dict(self.branch_map)

    def route_dict(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.routes)

    def used_vertices(self) -> tuple[int, ...]:
        used = {f for _, f in self.branch_map}
        for _, route in self.routes:
            used.update(route)
        return tuple(sorted(used))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_subdivision_certificate(
    f: Graph,
    h: Graph,
    cert: SubdivisionCertificate,
    mode: str = "spanning",
    cover_mask: int | None = None,
) -> CheckResult:
    """Structural re-validation of a certificate.

    mode='spanning': routes must cover exactly ``cover_mask`` (default: all
    of F); edges of F off the routes are permitted.
    mode='exact': additionally every edge of F must lie on exactly one
    route, i.e. F *is* the subdivision.
    """
    if mode not in ("spanning", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    cover = f.full_mask if cover_mask is None else cover_mask

    branch = dict(cert.branch_map)
    if sorted(branch) != list(range(h.order)):
        return CheckResult(False, "BranchDomain")
    images = list(branch.values())
    if len(set(images)) != len(images):
        return CheckResult(False, "BranchNotInjective")
    if any(not (0 <= x < f.order) or not (cover >> x & 1) for x in images):
        return CheckResult(False, "BranchOutOfRange")
    branch_mask = mask_of(images)

    routes = dict(cert.routes)
    if sorted(routes) != list(h.edges):
        return CheckResult(False, "RouteDomain")

    interior_mask = 0
    edge_count = 0
    route_edges = set()
    for (hu, hv), route in cert.routes:
        if len(route) < 2:
            return CheckResult(False, "RouteTooShort")
        if route[0] != branch[hu] or route[-1] != branch[hv]:
            return CheckResult(False, "RouteEndpoints")
        for a, b in zip(route, route[1:]):
            if not (0 <= a < f.order and 0 <= b < f.order) or not f.has_edge(a, b):
                return CheckResult(False, "BadRoute")
            route_edges.add((a, b) if a < b else (b, a))
            edge_count += 1
        inner = route[1:-1]
        inner_mask = mask_of(inner)
        if inner_mask.bit_count() != len(inner):
            return CheckResult(False, "RouteSelfIntersects")
        if inner_mask & branch_mask:
            return CheckResult(False, "InteriorHitsBranch")
        if inner_mask & interior_mask:
            return CheckResult(False, "InteriorsOverlap")
        if inner_mask & ~cover:
            return CheckResult(False, "RouteLeavesCover")
        interior_mask |= inner_mask

    used = branch_mask | interior_mask
    if used != cover:
        return CheckResult(False, "CoverageGap")
    if mode == "exact":
        if edge_count != f.e or route_edges != set(f.edges):
            return CheckResult(False, "EdgeNotOnRoute")
    return CheckResult(True)


@dataclass(frozen=True)
class TilingCertificate:
    """Partition of the host into blocks, one spanning witness per block."""

    blocks: tuple[tuple[int, ...], ...]
    witnesses: tuple[SubdivisionCertificate, ...]


# ---------------------------------------------------------------------------
# Text round-trip
# ---------------------------------------------------------------------------


def serialize_subdivision_certificate(cert: SubdivisionCertificate) -> str:
    lines = []
    for h, x in cert.branch_map:
        lines.append(f"branch {h} -> {x}")
    for (hu, hv), route in cert.routes:
        lines.append(f"route {hu} {hv} : " + " ".join(map(str, route)))
    return "\n".join(lines) + "\n"


def parse_subdivision_certificate(text: str) -> SubdivisionCertificate:
    branch = []
    routes = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "branch" and len(parts) == 4 and parts[2] == "->":
            branch.append((int(parts[1]), int(parts[3])))
        elif parts[0] == "route" and ":" in parts:
            sep = parts.index(":")
            if sep != 3:
                raise ValueError(f"line {lineno}: malformed route line {raw!r}")
            routes.append(((int(parts[1]), int(parts[2])),
                           tuple(int(p) for p in parts[sep + 1:])))
        else:
            raise ValueError(f"line {lineno}: unrecognized certificate line {raw!r}")
    return SubdivisionCertificate(tuple(sorted(branch)), tuple(sorted(routes)))


def serialize_tiling_certificate(cert: TilingCertificate) -> str:
    chunks = [f"blocks {len(cert.blocks)}"]
    for block, witness in zip(cert.blocks, cert.witnesses):
        chunks.append("block " + " ".join(map(str, block)))
        chunks.append(serialize_subdivision_certificate(witness).rstrip("\n"))
    return "\n".join(chunks) + "\n"


def parse_tiling_certificate(text: str) -> TilingCertificate:
    lines = text.split("\n")
    if not lines or not lines[0].startswith("blocks "):
        raise ValueError("missing 'blocks' header")
    blocks: list[tuple[int, ...]] = []
    witnesses: list[SubdivisionCertificate] = []
    chunk: list[str] = []

    def flush():
        if chunk:
            witnesses.append(parse_subdivision_certificate("\n".join(chunk)))
            chunk.clear()

    for raw in lines[1:]:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("block "):
            flush()
            blocks.append(tuple(int(p) for p in line.split()[1:]))
        else:
            chunk.append(line)
    flush()
    if len(blocks) != len(witnesses):
        raise ValueError("block/witness count mismatch")
    return TilingCertificate(tuple(blocks), tuple(witnesses))
