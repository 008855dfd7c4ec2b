import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subtile import (INFINITY, Bipartition, EmptyPattern, Graph, InfiniteHcf,
                     NotBipartiteError, PatternTooLarge, bipartition, build,
                     chi_cr_bipartite, construct_h_star, construct_hat_h,
                     f_value, hat_from_recipe, imbalance_hcf, is_subdivision,
                     param_report, threshold_coefficient, xi_star,
                     xi_with_witness)
from subtile.certs import check_subdivision_certificate
from subtile.params import (inside_subdivision, param_report_json,
                            serialize_param_report)
from subtile import enumerate_bipartite_subdivisions

from conftest import random_graph

F = Fraction


def brute_f_min(h: Graph):
    """Independent oracle: evaluate the split value on every subset."""
    best = None
    for r in range(h.order + 1):
        for xs in itertools.combinations(range(h.order), r):
            val = f_value(h, xs)
            if best is None or val < best[0]:
                best = (val, xs)
    return best


# -- split value -------------------------------------------------------------

def test_f_value_examples():
    assert f_value(build("K5"), ()) == F(3, 2)          # (5+0+10)/(0+10)
    assert f_value(build("K2"), (0, 1)) == F(3, 2)      # (2+1+0)/(2+0)
    k3 = build("K3")
    for r in range(4):
        for xs in itertools.combinations(range(3), r):
            assert f_value(k3, xs) == 2


def test_f_value_rejects_empty_pattern():
    with pytest.raises(EmptyPattern):
        f_value(Graph(3, ()), ())


def test_f_value_rejects_bad_subset():
    with pytest.raises(ValueError):
        f_value(build("K3"), (5,))


# -- xi ------------------------------------------------------------------------

def test_xi_examples():
    assert xi_with_witness(build("K4")) == (F(5, 3), ())
    assert xi_with_witness(build("K7")) == (F(4, 3), ())
    xi, witness = xi_with_witness(build("K(1,3)"))
    assert xi == F(4, 3) and witness == (1, 2, 3)       # the three leaves


def test_xi_matches_brute_force_on_randoms():
    rng = random.Random(515)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 7), rng.random())
        if g.e == 0:
            continue
        xi, witness = xi_with_witness(g)
        best_val, _ = brute_f_min(g)
        assert xi == best_val
        assert f_value(g, witness) == xi
        assert F(1) < xi <= 2
        assert xi <= f_value(g, ())


def test_f_dominates_xi_exhaustively_on_corpus(corpus):
    for h in corpus.values():
        if h.order > 7:
            continue
        xi, witness = xi_with_witness(h)
        for r in range(h.order + 1):
            for xs in itertools.combinations(range(h.order), r):
                assert f_value(h, xs) >= xi
        assert f_value(h, witness) == xi


def test_xi_witness_tie_break_smallest_then_lex():
    # every subset of C4 attains the minimum 2; canonical pick is empty
    xi, witness = xi_with_witness(build("C4"))
    assert xi == 2 and witness == ()


def test_xi_rejects_oversized_pattern():
    with pytest.raises(PatternTooLarge):
        xi_with_witness(Graph(25, ((0, 1),)))


# -- imbalances ----------------------------------------------------------------

def d_of(h: Graph, xs) -> int:
    y = tuple(v for v in range(h.order) if v not in xs)
    ein_x = sum(1 for u, v in h.edges if u in xs and v in xs)
    ein_y = sum(1 for u, v in h.edges if u in y and v in y)
    return (len(xs) + ein_y) - (len(y) + ein_x)


def test_imbalance_examples():
    c, hcf = imbalance_hcf(build("K7"))
    assert hcf == 2
    assert {2, 6, 10, 14, -2, -6, -10, -14} <= set(c)
    assert 0 not in c

    c, hcf = imbalance_hcf(build("K3"))
    assert c == (0,) and hcf is INFINITY

    c, hcf = imbalance_hcf(build("K6"))
    assert hcf == 3 and {9, 6, 3, 0} <= set(c)


def test_imbalances_match_definition_on_randoms():
    rng = random.Random(616)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 6), rng.random())
        if g.e == 0:
            continue
        c, hcf = imbalance_hcf(g)
        expect = set()
        for r in range(g.order + 1):
            for xs in itertools.combinations(range(g.order), r):
                expect.add(d_of(g, xs))
        assert set(c) == expect
        if hcf is INFINITY:
            assert expect == {0}
        else:
            assert all(d % hcf == 0 for d in expect)
            assert hcf > 0


# -- xi* and thresholds --------------------------------------------------------

def test_xi_star_examples():
    assert xi_star(build("K5")) == F(3, 2)
    assert xi_star(build("K7")) == F(3, 2)   # max(3/2, 4/3) under gcd 2
    assert xi_star(build("C4")) == 2


def test_threshold_examples():
    assert threshold_coefficient(build("K2"), "even") == F(1, 3)
    assert threshold_coefficient(build("K7"), "odd") == F(1, 2)
    assert threshold_coefficient(build("K7"), "even") == F(1, 3)
    assert threshold_coefficient(build("K4"), "even") == F(2, 5)


def test_threshold_bad_parity():
    with pytest.raises(ValueError):
        threshold_coefficient(build("K2"), "sometimes")


def test_param_report_invariants(corpus):
    for h in corpus.values():
        rep = param_report(h)
        assert F(1) < rep.xi <= 2
        if rep.hcf == 1:
            assert rep.xi_star == rep.xi
        elif rep.hcf == 2:
            assert rep.xi_star == max(F(3, 2), rep.xi)
        else:
            assert rep.xi_star == 2
        assert 0 < rep.threshold_even <= F(1, 2)
        assert 0 < rep.threshold_odd <= F(1, 2)
        assert (rep.hcf is INFINITY) == (rep.imbalances == (0,))


def test_param_report_serialization_k7():
    rep = param_report(build("K7"))
    text = serialize_param_report(rep)
    assert "xi 4/3" in text
    assert "hcf 2" in text
    assert "threshold_odd 1/2" in text
    payload = param_report_json(rep)
    assert '"xi": "4/3"' in payload
    assert '"threshold_even": "1/3"' in payload
    infinite = param_report_json(param_report(build("K3")))
    assert '"hcf": "INFINITY"' in infinite


# -- H* --------------------------------------------------------------------

def test_h_star_k4():
    g, parts, branch = construct_h_star(build("K4"))
    assert g.order == 10
    assert sorted(parts.sizes) == [4, 6]
    assert branch == tuple((u, u) for u in range(4))


def test_h_star_k2():
    g, parts, _ = construct_h_star(build("K2"))
    assert g.order == 3 and g.edges == ((0, 2), (1, 2))
    assert parts.side_a == (0, 1) and parts.side_b == (2,)


def test_h_star_k3_is_c6():
    g, parts, _ = construct_h_star(build("K3"))
    assert g.order == 6 and g.e == 6
    assert all(g.degree(u) == 2 for u in range(6))
    assert g.is_connected()
    assert parts.sizes == (3, 3)


def test_h_star_is_bipartite_subdivision(corpus):
    for name, h in corpus.items():
        g, parts, _ = construct_h_star(h)
        assert g.order == h.order + len(parts.side_a) + len(parts.side_b) - h.order
        assert isinstance(bipartition(g), Bipartition)
        for u, v in g.edges:
            a = u in parts.side_a
            b = v in parts.side_a
            assert a != b
        cert = is_subdivision(g, h)
        assert cert is not None
        assert check_subdivision_certificate(g, h, cert, "exact")


# -- chi_cr ------------------------------------------------------------------

def test_chi_cr_examples():
    assert chi_cr_bipartite(build("C4")) == 2
    assert chi_cr_bipartite(build("K(1,3)")) == F(4, 3)
    h_star, _, _ = construct_h_star(build("K4"))
    assert chi_cr_bipartite(h_star) == F(5, 3)


def test_chi_cr_errors():
    with pytest.raises(NotBipartiteError):
        chi_cr_bipartite(build("K3"))
    with pytest.raises(EmptyPattern):
        chi_cr_bipartite(Graph(4, ()))


def test_chi_cr_of_h_star_at_most_xi(corpus):
    for h in corpus.values():
        g, _, _ = construct_h_star(h)
        xi, _ = xi_with_witness(h)
        assert chi_cr_bipartite(g) <= xi


# -- hat graphs ----------------------------------------------------------------

def test_hat_k7():
    hat = construct_hat_h(build("K7"))
    assert hat.graph.order == 16
    assert (hat.small_side, hat.imbalance) == (7, 2)
    assert len(hat.components) == 1
    assert hat.recipe == (((0, 1, 2), 1, 1),)


def test_hat_k2():
    hat = construct_hat_h(build("K2"))
    assert hat.graph.order == 3
    assert (hat.small_side, hat.imbalance) == (1, 1)


def test_hat_k4():
    hat = construct_hat_h(build("K4"))
    assert hat.graph.order == 7
    assert (hat.small_side, hat.imbalance) == (3, 1)


def test_hat_infinite_hcf_refused():
    with pytest.raises(InfiniteHcf):
        construct_hat_h(build("C4"))


def test_hat_components_are_subdivisions(corpus):
    for name in ("K2", "K4", "K7", "P3", "P4", "K13"):
        h = corpus[name]
        hat = construct_hat_h(h)
        seen = 0
        for comp in hat.components:
            sub = hat.graph.induced(comp.vertices)
            assert is_subdivision(sub, h) is not None
            seen += len(comp.vertices)
        assert seen == hat.graph.order
        sizes = hat.parts.sizes
        assert abs(sizes[0] - sizes[1]) == hat.imbalance
        _, hcf = imbalance_hcf(h)
        assert hat.imbalance == hcf
        assert isinstance(bipartition(hat.graph), Bipartition)


def _all_union_orders_reaching(h: Graph, target: int, below: int) -> bool:
    """Exhaustive cross-check: can any disjoint union of bipartite
    subdivisions of total order < below reach net imbalance target?"""
    items = set()
    if below - 1 >= h.order:
        for sub, parts in enumerate_bipartite_subdivisions(h, below - 1):
            d = abs(len(parts.side_a) - len(parts.side_b))
            items.add((sub.order, d))
    reach = {0: 0}          # net imbalance -> min total order
    frontier = dict(reach)
    while frontier:
        nxt = {}
        for net, order in frontier.items():
            for w, d in items:
                for s in (d, -d):
                    cand_net, cand_order = net + s, order + w
                    if cand_order >= below or abs(cand_net) > 4 * below:
                        continue
                    if cand_order < reach.get(cand_net, below):
                        reach[cand_net] = cand_order
                        nxt[cand_net] = cand_order
        frontier = nxt
    return target in reach


@pytest.mark.parametrize("name", ["K2", "P3", "K13", "K4"])
def test_hat_minimality_cross_check(corpus, name):
    h = corpus[name]
    hat = construct_hat_h(h)
    assert not _all_union_orders_reaching(h, hat.imbalance, hat.graph.order)


def test_hat_from_recipe_star_imbalance_two():
    hat = hat_from_recipe(build("K(1,3)"), [((0,), 1, 1)])
    assert (hat.small_side, hat.imbalance) == (1, 2)
    assert hat.graph == build("K(1,3)")


def test_inside_subdivision_certificate_validates():
    rng = random.Random(321)
    for _ in range(20):
        h = random_graph(rng, rng.randint(2, 6), rng.random())
        if h.e == 0:
            continue
        xs = [v for v in range(h.order) if rng.random() < 0.5]
        g, parts, cert = inside_subdivision(h, xs)
        assert check_subdivision_certificate(g, h, cert, "exact")
        assert len(parts.side_a) + len(parts.side_b) == g.order


# -- properties over random patterns ------------------------------------------

@given(st.integers(2, 6), st.integers(0, 2**30 - 1))
@settings(max_examples=40, deadline=None)
def test_f_value_at_least_xi(n, seed):
    rng = random.Random(seed)
    h = random_graph(rng, n, 0.6)
    if h.e == 0:
        return
    xi, witness = xi_with_witness(h)
    for _ in range(8):
        xs = [v for v in range(n) if rng.random() < 0.5]
        assert f_value(h, xs) >= xi
    assert f_value(h, witness) == xi
