import itertools
import random

import pytest

from subtile import (AnchoredCount, Graph, SearchBudget, SearchBudgetExceeded,
                     build, count_anchored_gadgets,
                     enumerate_bipartite_subdivisions, find_spanning_subdivision,
                     is_subdivision, iter_subdivisions, subdivide_edges,
                     xi_with_witness)
from subtile.certs import (check_subdivision_certificate,
                           parse_subdivision_certificate,
                           serialize_subdivision_certificate)
from subtile.gadgets import build_gadget

from conftest import random_graph


# -- independent oracles -------------------------------------------------------

def isomorphic(a: Graph, b: Graph) -> bool:
    """Plain backtracking isomorphism with a degree-profile gate."""
    if a.order != b.order or a.e != b.e:
        return False
    if sorted(a.degrees) != sorted(b.degrees):
        return False
    order = sorted(range(a.order), key=lambda u: (-a.degree(u), u))
    image = [-1] * a.order
    used = [False] * b.order

    def rec(i: int) -> bool:
        if i == a.order:
            return True
        u = order[i]
        for x in range(b.order):
            if used[x] or a.degree(u) != b.degree(x):
                continue
            ok = True
            for w in a.neighbors(u):
                if image[w] != -1 and not b.has_edge(x, image[w]):
                    ok = False
                    break
            if ok:
                nonedges = [w for w in order[:i]
                            if not a.has_edge(u, w) and b.has_edge(x, image[w])]
                if nonedges:
                    ok = False
            if ok:
                image[u] = x
                used[x] = True
                if rec(i + 1):
                    return True
                image[u] = -1
                used[x] = False
        return False

    return rec(0)


def subdivision_by_enumeration(f: Graph, h: Graph) -> bool:
    """Oracle: enumerate every subdivision of H up to v(F) and test
    isomorphism against F."""
    if h.e == 0:
        return False
    for _, sub in iter_subdivisions(h, f.order):
        if isomorphic(f, sub):
            return True
    return False


# -- exact mode ------------------------------------------------------------

def test_is_subdivision_examples():
    assert is_subdivision(build("C4"), build("K3")) is not None
    cert = is_subdivision(build("K4"), build("K4"))
    assert cert is not None
    assert cert.branch_map == tuple((u, u) for u in range(4))
    assert is_subdivision(build("K(1,3)"), build("K3")) is None


def test_is_subdivision_oracle_agreement(corpus):
    hosts = [build(e) for e in
             ("C4", "C5", "C6", "K4", "K(1,3)", "K(2,3)", "P4", "P5",
              "U(K2,K2)", "U(C4,K2)", "K(3,3)", "C9")]
    rng = random.Random(808)
    hosts += [random_graph(rng, rng.randint(3, 8), rng.random())
              for _ in range(25)]
    patterns = [corpus[n] for n in ("K2", "K3", "P3", "K13", "C4", "K4",
                                    "K3uK2")]
    for f in hosts:
        if f.order > 9:
            continue
        for h in patterns:
            got = is_subdivision(f, h)
            expect = subdivision_by_enumeration(f, h)
            assert (got is not None) == expect, (f, h)
            if got is not None:
                assert check_subdivision_certificate(f, h, got, "exact")


def test_is_subdivision_handles_isolated_vertices():
    h = Graph(3, ((0, 1),))              # an edge plus an isolated vertex
    f = Graph(4, ((0, 2), (2, 1)))       # its subdivision plus an isolated
    assert is_subdivision(f, h) is not None
    f_bad = Graph(4, ((0, 2), (2, 1), (1, 3)))
    assert is_subdivision(f_bad, h) is None


# -- spanning mode -----------------------------------------------------------

def test_spanning_examples():
    assert find_spanning_subdivision(build("C6"), build("K3")) is not None
    cert = find_spanning_subdivision(build("K(3,3)"), build("K4"))
    assert cert is not None
    assert check_subdivision_certificate(build("K(3,3)"), build("K4"), cert)
    assert find_spanning_subdivision(build("C6"), build("K4")) is None


def test_spanning_within_cover_mask():
    g = build("U(C4,K3)")
    cert = find_spanning_subdivision(g, build("K3"), cover_mask=0b1110000)
    assert cert is not None
    assert check_subdivision_certificate(g, build("K3"), cert,
                                         cover_mask=0b1110000)
    # three vertices of the 4-cycle induce a path: no spanning cycle there
    assert find_spanning_subdivision(g, build("K3"), cover_mask=0b0000111) is None


def test_spanning_certificates_revalidate_on_randoms(corpus):
    rng = random.Random(99)
    for _ in range(60):
        g = random_graph(rng, rng.randint(3, 8), 0.4 + rng.random() * 0.5)
        for name in ("K2", "K3", "K13"):
            h = corpus[name]
            cert = find_spanning_subdivision(g, h)
            if cert is not None:
                assert check_subdivision_certificate(g, h, cert, "spanning")


def test_budget_exceeded_is_raised():
    with pytest.raises(SearchBudgetExceeded):
        find_spanning_subdivision(build("K(6,6)"), build("K4"),
                                  budget=SearchBudget(5))


# -- length-vector enumeration ------------------------------------------------

def test_enumerate_k3():
    subs = enumerate_bipartite_subdivisions(build("K3"), 8)
    orders = sorted(g.order for g, _ in subs)
    assert set(orders) == {4, 6, 8}
    for g, parts in subs:
        assert g.is_connected()
        assert all(g.degree(u) == 2 for u in range(g.order))
    # three isomorphism classes despite many vectors
    reps = []
    for g, _ in subs:
        if not any(isomorphic(g, r) for r in reps):
            reps.append(g)
    assert len(reps) == 3


def test_enumerate_k2_paths():
    subs = enumerate_bipartite_subdivisions(build("K2"), 4)
    assert sorted(g.order for g, _ in subs) == [2, 3, 4]


def test_enumerate_k3_too_small():
    assert enumerate_bipartite_subdivisions(build("K3"), 3) == []


def test_part_ratio_bound_on_corpus(corpus):
    for name in ("K2", "K3", "P3", "K13", "C4"):
        h = corpus[name]
        xi, _ = xi_with_witness(h)
        for g, parts in enumerate_bipartite_subdivisions(h, h.order + h.e + 4):
            small, big = sorted(parts.sizes)
            assert big * (xi - 1) <= small


def test_subdivide_edges_layout():
    g = subdivide_edges(build("K3"), (2, 0, 1))
    assert g.order == 6
    assert is_subdivision(g, build("K3")) is not None


# -- anchored counts -----------------------------------------------------------

def brute_anchored_count(host: Graph, gadget: Graph,
                         pins: dict[int, int]) -> int:
    """Oracle: try every candidate set with every assignment."""
    free_pattern = [u for u in range(gadget.order) if u not in pins]
    need = len(free_pattern)
    hosts = [x for x in range(host.order) if x not in pins.values()]
    count = 0
    for subset in itertools.combinations(hosts, need):
        found = False
        for perm in itertools.permutations(subset):
            image = dict(pins)
            image.update(zip(free_pattern, perm))
            if all(host.has_edge(image[a], image[b])
                   for a, b in gadget.edges):
                found = True
                break
        if found:
            count += 1
    return count


def test_count_anchored_examples():
    res = count_anchored_gadgets(build("C4"), build("K2"), "SHAT",
                                 {"u": 0, "v": 2})
    assert isinstance(res, AnchoredCount)
    assert res.count == 1

    res = count_anchored_gadgets(build("K3"), build("K2"), "SHAT",
                                 {"u": 0, "v": 1})
    assert res.count == 0


def test_count_anchored_k55_oracle():
    host = build("K(5,5)")
    res = count_anchored_gadgets(host, build("K2"), "T1HAT",
                                 {"u": 0, "v": 5})
    gadget = build_gadget(build("K2"), "T1HAT")
    roles = dict(gadget.anchors)
    pins = {roles["u"]: 0, roles["v"]: 5}
    assert res.count == brute_anchored_count(host, gadget.graph, pins) == 24


def test_count_anchored_monotone_under_edges():
    rng = random.Random(2024)
    for _ in range(15):
        g = random_graph(rng, 6, 0.5)
        non_edges = [(u, v) for u in range(6) for v in range(u + 1, 6)
                     if not g.has_edge(u, v)]
        if not non_edges:
            continue
        anchors = {"u": 0, "v": 1}
        before = count_anchored_gadgets(g, build("K2"), "SHAT", anchors).count
        extra = rng.choice(non_edges)
        g2 = Graph(6, g.edges + (extra,))
        after = count_anchored_gadgets(g2, build("K2"), "SHAT", anchors).count
        assert after >= before


def test_count_anchored_random_hosts_vs_oracle():
    rng = random.Random(6021)
    k2 = build("K2")
    for _ in range(12):
        g = random_graph(rng, rng.randint(4, 7), 0.4 + rng.random() * 0.4)
        for kind, roles in (("SHAT", ("u", "v")), ("T2HAT", ("u",))):
            pool = list(range(g.order))
            picks = rng.sample(pool, len(roles))
            anchors = dict(zip(roles, picks))
            gadget = build_gadget(k2, kind)
            role_map = dict(gadget.anchors)
            pins = {role_map[r]: anchors[r] for r in roles}
            got = count_anchored_gadgets(g, k2, kind, anchors)
            assert got.count == brute_anchored_count(g, gadget.graph, pins)
            assert got.embeddings >= got.count


def test_count_anchored_requires_roles():
    with pytest.raises(ValueError):
        count_anchored_gadgets(build("C4"), build("K2"), "SHAT", {"u": 0})
    with pytest.raises(ValueError):
        count_anchored_gadgets(build("C4"), build("K2"), "T1", {})


# -- certificate serialization --------------------------------------------------

def test_certificate_round_trip():
    cert = find_spanning_subdivision(build("K(3,3)"), build("K4"))
    text = serialize_subdivision_certificate(cert)
    assert parse_subdivision_certificate(text) == cert


def test_tampered_certificate_rejected():
    g, h = build("C6"), build("K3")
    cert = find_spanning_subdivision(g, h)
    assert check_subdivision_certificate(g, h, cert, "spanning")
    bad_routes = tuple(
        (edge, route[:1] + (route[0],) + route[1:]) if i == 0 else (edge, route)
        for i, (edge, route) in enumerate(cert.routes))
    bad = type(cert)(cert.branch_map, bad_routes)
    assert not check_subdivision_certificate(g, h, bad, "spanning")
