from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from bclique.analysis import (
    INDEPENDENCE_FOOTER,
    check_b_girth_bound,
    check_b_independence_bound,
    check_induced_monotonicity,
    check_spanning_monotonicity,
    deletion_chain_reports,
    floor_neg_two_over_zeta,
    replay_extremal,
    replay_monotonicity,
    zeta,
)
from bclique.cliques import cbpoly_bruteforce
from bclique.graph import (
    b_girth,
    complete_graph,
    cycle_graph,
    empty_graph,
    induced_subgraph,
    path_graph,
)
from bclique.poly import DEFAULT_WIDTH, Order, compare_to_rational
from bclique.report import Verdict

from conftest import graphs_with_b

X = sympy.Symbol("x")


def sympy_zeta(g, B, y):
    sec = cbpoly_bruteforce(g, B).section_at_y(y)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(sec.coeffs))
    neg = [r for r in sympy.Poly(expr, X).real_roots() if r < 0]
    return max(neg) if neg else None


def contains_cycle_root(iv, g: int) -> bool:
    """lo < (-g + sqrt(g(g-4))) / (2g) < hi, decided by squaring."""
    disc = g * (g - 4)

    def root_above(q: F) -> bool:
        t = 2 * g * q + g  # root > q  <=>  sqrt(disc) > t
        return t < 0 or disc > t * t

    return root_above(iv.lo) and not root_above(iv.hi)


def test_zeta_examples():
    assert compare_to_rational(zeta(empty_graph(3), (), 1), F(-1, 3)) is Order.EQ
    assert compare_to_rational(zeta(cycle_graph(4), range(4), 1), F(-1, 2)) is Order.EQ
    for y in (0, F(1, 3), 5):
        assert compare_to_rational(zeta(complete_graph(2), (), y), -1) is Order.EQ
    with pytest.raises(ValueError):
        zeta(complete_graph(2), (), -1)


@pytest.mark.parametrize("g", range(4, 10))
def test_cycle_closed_form(g):
    ra = zeta(cycle_graph(g), range(g), 1)
    iv = ra.zeta
    assert iv.width <= DEFAULT_WIDTH
    if iv.exact is not None:
        assert g == 4 and iv.exact == F(-1, 2)
    else:
        assert contains_cycle_root(iv, g)


@given(graphs_with_b(max_n=6), st.sampled_from([F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]))
def test_zeta_matches_sympy(gb, y):
    g, B = gb
    ra = zeta(g, B, y)
    want = sympy_zeta(g, B, y)
    if want is None:
        assert ra.zeta is None
    else:
        assert ra.zeta.lo <= want <= ra.zeta.hi


# monotonicity


def test_induced_examples(chordal4):
    g, B = chordal4.graph, chordal4.B
    rep = check_induced_monotonicity(g, B, 0, [1])
    assert rep.verdict is Verdict.HOLDS and rep.details["rows"][0]["y"] == "1/1"
    same = check_induced_monotonicity(g, B, None)
    assert same.verdict is Verdict.HOLDS
    assert all(r["order_H_vs_G"] == "EQ" for r in same.details["rows"])
    e3 = check_induced_monotonicity(empty_graph(3), (), 0, [1])
    assert e3.details["rows"][0]["order_H_vs_G"] == "LT"


def test_spanning_examples():
    rep = check_spanning_monotonicity(complete_graph(2), (), (0, 1), [1])
    assert rep.verdict is Verdict.HOLDS and rep.details["rows"][0]["order_G_vs_H"] == "LT"
    c4 = check_spanning_monotonicity(cycle_graph(4), range(4), (0, 1), [1])
    assert c4.verdict is Verdict.HOLDS
    tri = check_spanning_monotonicity(complete_graph(3), (), (0, 1), [1])
    assert tri.details["rows"][0]["order_G_vs_H"] == "LT"


def _sympy_order(a, b):
    if a is None and b is None:
        return "EQ"
    if a is None:
        return "LT"
    if b is None:
        return "GT"
    d = a - b
    return "EQ" if sympy.simplify(d) == 0 else ("LT" if d < 0 else "GT")


@given(graphs_with_b(min_n=2, max_n=6), st.data())
def test_induced_orders_match_sympy(gb, data):
    g, B = gb
    v = data.draw(st.integers(0, g.n - 1))
    y = data.draw(st.sampled_from([F(0), F(1, 2), F(1)]))
    rep = check_induced_monotonicity(g, B, v, [y])
    h, old = induced_subgraph(g, [u for u in range(g.n) if u != v])
    bh = [old.index(u) for u in B if u != v]
    assert rep.details["rows"][0]["order_H_vs_G"] == _sympy_order(sympy_zeta(h, bh, y), sympy_zeta(g, B, y))
    if rep.violated:
        assert replay_monotonicity(rep.witness)


@given(graphs_with_b(min_n=2, max_n=6), st.data())
def test_spanning_orders_match_sympy(gb, data):
    g, B = gb
    edges = g.edges()
    if not edges:
        return
    e = data.draw(st.sampled_from(edges))
    y = data.draw(st.sampled_from([F(0), F(1, 2), F(1)]))
    rep = check_spanning_monotonicity(g, B, e, [y])
    h = g.without_edge(*e)
    assert rep.details["rows"][0]["order_G_vs_H"] == _sympy_order(sympy_zeta(g, B, y), sympy_zeta(h, B, y))


def test_deletion_chain_is_seeded(chordal4):
    a = [r.to_json() for r in deletion_chain_reports(chordal4.graph, chordal4.B, seed=3)]
    b = [r.to_json() for r in deletion_chain_reports(chordal4.graph, chordal4.B, seed=3)]
    assert a == b
    assert len(a) == chordal4.graph.n - 1 + chordal4.graph.num_edges


def test_replay_detects_tampering():
    # a fabricated witness must not replay
    fake = {"graph": complete_graph(3).to_json(), "B": [], "vertex": 1, "y": "1/1"}
    assert not replay_monotonicity(fake)


# extremal bounds


def test_independence_equality_on_edgeless():
    for n in range(1, 7):
        rep = check_b_independence_bound(empty_graph(n), range(n))
        assert rep.verdict is Verdict.HOLDS
        assert rep.details["alphaB"] == n
        assert rep.details["zeta_vs_minus_one_over_alpha"] == "EQ"
        assert INDEPENDENCE_FOOTER in rep.notes


def test_independence_examples(k3):
    rep = check_b_independence_bound(k3.graph, k3.B)
    assert rep.verdict is Verdict.HOLDS and rep.details["alphaB"] == 1
    assert check_b_independence_bound(k3.graph, ()).verdict is Verdict.HOLDS


def test_girth_examples():
    c4 = check_b_girth_bound(cycle_graph(4), range(4))
    assert c4.verdict is Verdict.HOLDS and c4.details["gB"] == 4 and c4.details["bound"] == 6
    c5 = check_b_girth_bound(cycle_graph(5), range(5))
    # zeta = (-5 + sqrt 5)/10, -2/zeta = 7.236..., bound 9
    assert c5.verdict is Verdict.HOLDS and c5.details["bound"] == 9
    acyclic = check_b_girth_bound(path_graph(4), range(4))
    assert acyclic.verdict is Verdict.NOT_APPLICABLE


@given(graphs_with_b(max_n=6))
def test_floor_matches_sympy(gb):
    g, B = gb
    ra = zeta(g, B, 1)
    want = sympy_zeta(g, B, 1)
    if want is None:
        return
    assert floor_neg_two_over_zeta(ra) == sympy.floor(-2 / want)


@given(graphs_with_b(max_n=6))
def test_extremal_violations_replay(gb):
    g, B = gb
    for check in (check_b_independence_bound, check_b_girth_bound):
        rep = check(g, B)
        if rep.violated:
            assert replay_extremal(rep.claim, rep.witness)


@pytest.mark.parametrize("g", range(3, 10))
def test_cycle_girth_bound(g):
    rep = check_b_girth_bound(cycle_graph(g), range(g))
    assert rep.details["gB"] == b_girth(cycle_graph(g), range(g)) == g
    assert rep.verdict is Verdict.HOLDS
