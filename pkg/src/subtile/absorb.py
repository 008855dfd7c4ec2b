"""Seeded random selection of disjoint absorber families from explicitly
enumerated systems.

A system records, for each anchor element x, the t-sets Z of host vertices
that complete an anchored gadget embedding for x. The selection procedure
samples every candidate set independently with probability p, discards both
members of every intersecting pair, drops the canonical-last set while the
count is odd, and truncates to the cap (evenness is restored after
truncation, so the structural guarantees always hold). The generator is
fixed and documented, so identical inputs give byte-identical selections on
every platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budget import SearchBudget, ensure_budget
from .exact import fmt_frac, parse_frac
from .graphs import Graph


class SplitMix64:
    """Counter-based 64-bit generator (splitmix64).

    With GAMMA = 0x9E3779B97F4A7C15, the i-th output (i = 1, 2, ...) is
    mix((seed + i * GAMMA) mod 2^64) where

        mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9  (mod 2^64)
                z ^= z >> 27; z *= 0x94D049BB133111EB  (mod 2^64)
                z ^= z >> 31
    """

    GAMMA = 0x9E3779B97F4A7C15
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)


def bernoulli(rng: SplitMix64, p: Fraction) -> bool:
    """One draw with probability within 2^-64 of p (single 64-bit
    threshold test, exact integer arithmetic)."""
    return rng.next_u64() * p.denominator < p.numerator << 64


@dataclass(frozen=True)
class System:
    """Pairs (x, Z): for each element id, its deduplicated list of t-sets."""

    ground: int
    t: int
    entries: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]

    @property
    def xs(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.entries)

    def sets_for(self, x: str) -> tuple[tuple[int, ...], ...]:
        return dict(self.entries)[x]

    def candidate_sets(self) -> tuple[tuple[int, ...], ...]:
        """Union of all listed sets, in canonical sorted order."""
        return tuple(sorted({z for _, zs in self.entries for z in zs}))


def make_system(ground: int, t: int, mapping) -> System:
    """Normalize a mapping {x id: iterable of t-sets} into a System."""
    entries = []
    for x in sorted(mapping):
        zs = sorted({tuple(sorted(z)) for z in mapping[x]})
        for z in zs:
            if len(z) != t or len(set(z)) != t:
                raise ValueError(f"{z} is not a {t}-set")
            if any(not 0 <= u < ground for u in z):
                raise ValueError(f"{z} not within ground set 0..{ground - 1}")
        entries.append((str(x), tuple(zs)))
    return System(ground=ground, t=t, entries=tuple(entries))


def anchor_id(anchors: dict[str, int]) -> str:
    return ",".join(f"{role}={anchors[role]}" for role in sorted(anchors))


def build_system(g: Graph, h: Graph, kind: str,
                 assignments, budget: SearchBudget | None = None) -> System:
    """Enumerate, for each anchor assignment, every completing vertex set of
    the anchored gadget; exact, via the embedding search."""
    from .embed import iter_subgraph_embeddings
    from .gadgets import build_gadget

    budget = ensure_budget(budget)
    gadget = build_gadget(h, kind)
    roles = dict(gadget.anchors)
    mapping: dict[str, set[tuple[int, ...]]] = {}
    t = None
    for anchors in assignments:
        pins = {roles[r]: v for r, v in anchors.items()}
        t = gadget.graph.order - len(pins)
        pin_images = set(pins.values())
        sets = set()
        for image in iter_subgraph_embeddings(g, gadget.graph, pins, budget):
            sets.add(tuple(sorted(set(image.values()) - pin_images)))
        mapping[anchor_id(anchors)] = sets
    if t is None:
        t = gadget.graph.order            # empty assignment list
    return make_system(g.order, t, mapping)


@dataclass(frozen=True)
class FamilySelection:
    family: tuple[tuple[int, ...], ...]
    seed: int
    p: Fraction
    cap: int
    coverage: tuple[tuple[str, int], ...]


def select_family(system: System, p: Fraction, cap: int,
                  seed: int) -> FamilySelection:
    """Deterministic seeded selection; see the module docstring for the
    exact procedure. Identical (system, p, cap, seed) give identical output."""
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError(f"p must satisfy 0 < p <= 1, got {p}")
    if cap < 0:
        raise ValueError("cap must be non-negative")
    rng = SplitMix64(seed)
    candidates = system.candidate_sets()
    sampled = [z for z in candidates if bernoulli(rng, p)]

    masks = [sum(1 << u for u in z) for z in sampled]
    family = []
    for i, z in enumerate(sampled):
        if all(masks[i] & masks[j] == 0 for j in range(len(sampled)) if j != i):
            family.append(z)
    if len(family) % 2 == 1:
        family.pop()
    if len(family) > cap:
        family = family[:cap]
        if len(family) % 2 == 1:
            family.pop()

    members = set(family)
    coverage = tuple(
        (x, sum(1 for z in zs if z in members)) for x, zs in system.entries)
    return FamilySelection(family=tuple(family), seed=seed, p=p, cap=cap,
                           coverage=coverage)


@dataclass(frozen=True)
class FamilyReport:
    checks: tuple[tuple[str, bool, str], ...]
    min_coverage: int
    mean_coverage: Fraction | None

    @property
    def ok(self) -> bool:
        return all(good for _, good, _ in self.checks)


def verify_family(system: System, sel: FamilySelection) -> FamilyReport:
    """Assert disjointness, evenness and the cap; report coverage statistics
    without asserting any threshold on them."""
    checks = []
    universe = set(system.candidate_sets())
    checks.append(("membership", all(z in universe for z in sel.family),
                   "every member listed in the system"))
    used: set[int] = set()
    disjoint = True
    for z in sel.family:
        if used & set(z):
            disjoint = False
            break
        used.update(z)
    checks.append(("disjointness", disjoint, "members pairwise disjoint"))
    checks.append(("parity", len(sel.family) % 2 == 0, "family size even"))
    checks.append(("cap", len(sel.family) <= sel.cap,
                   f"family size within cap {sel.cap}"))
    members = set(sel.family)
    recomputed = tuple(
        (x, sum(1 for z in zs if z in members)) for x, zs in system.entries)
    checks.append(("coverage", recomputed == sel.coverage,
                   "stated coverage matches"))
    counts = [c for _, c in recomputed]
    min_cov = min(counts) if counts else 0
    mean_cov = Fraction(sum(counts), len(counts)) if counts else None
    return FamilyReport(tuple(checks), min_cov, mean_cov)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def serialize_system(system: System) -> str:
    lines = [f"system {system.ground} {system.t}"]
    for x, zs in system.entries:
        lines.append(f"x {x}")
        for z in zs:
            lines.append("z " + " ".join(map(str, z)))
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> System:
    lines = [ln.strip() for ln in text.split("\n")]
    if not lines or not lines[0].startswith("system "):
        raise ValueError("missing 'system' header")
    _, ground, t = lines[0].split()
    mapping: dict[str, list[tuple[int, ...]]] = {}
    current: str | None = None
    for ln in lines[1:]:
        if not ln:
            continue
        if ln.startswith("x "):
            current = ln[2:].strip()
            mapping.setdefault(current, [])
        elif ln.startswith("z "):
            if current is None:
                raise ValueError("'z' line before any 'x' line")
            mapping[current].append(tuple(int(p) for p in ln[2:].split()))
        else:
            raise ValueError(f"unrecognized system line {ln!r}")
    return make_system(int(ground), int(t), mapping)


def serialize_selection(sel: FamilySelection) -> str:
    lines = [f"selection seed={sel.seed} p={fmt_frac(sel.p)} cap={sel.cap}",
             f"family {len(sel.family)}"]
    for z in sel.family:
        lines.append("set " + " ".join(map(str, z)))
    for x, count in sel.coverage:
        lines.append(f"coverage {x} {count}")
    return "\n".join(lines) + "\n"


def parse_selection(text: str) -> FamilySelection:
    lines = [ln.strip() for ln in text.split("\n") if ln.strip()]
    head = lines[0].split()
    if head[0] != "selection":
        raise ValueError("missing 'selection' header")
    meta = dict(part.split("=", 1) for part in head[1:])
    family = []
    coverage = []
    for ln in lines[1:]:
        if ln.startswith("family "):
            continue
        if ln.startswith("set"):
            family.append(tuple(int(p) for p in ln.split()[1:]))
        elif ln.startswith("coverage "):
            parts = ln.split()
            coverage.append((parts[1], int(parts[2])))
    return FamilySelection(family=tuple(family), seed=int(meta["seed"]),
                           p=parse_frac(meta["p"]), cap=int(meta["cap"]),
                           coverage=tuple(coverage))
