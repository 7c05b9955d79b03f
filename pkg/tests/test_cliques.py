import networkx as nx
import pytest
from hypothesis import given, strategies as st

from bclique.cliques import (
    BudgetExceeded,
    cbpoly_bruteforce,
    cbpoly_edge_recurrence,
    cbpoly_peo,
    cbpoly_vertex_recurrence,
    classical_clique_poly,
    enumerate_cliques,
    multiaffine_vertex_poly,
    peo_steps,
    weighted_cbpoly,
)
from bclique.graph import (
    Graph,
    GraphError,
    Peo,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_chordal,
    is_triangle_free,
    path_graph,
)
from bclique.poly import BivariatePoly

from conftest import graphs, graphs_with_b, to_nx

K3_POLY = BivariatePoly({(0, 0): 1, (1, 0): 1, (1, 1): 2, (2, 1): 2, (2, 2): 1, (3, 2): 1})
CHORDAL4_POLY = BivariatePoly({(0, 0): 1, (1, 0): 2, (1, 1): 2, (2, 1): 3, (2, 2): 1, (3, 2): 1})


def oracle_poly(g, B):
    counts = {(0, 0): 1}
    for c in nx.enumerate_all_cliques(to_nx(g)):
        key = (len(c), sum(1 for v in c if v in B))
        counts[key] = counts.get(key, 0) + 1
    return BivariatePoly(counts)


def test_enumeration_counts(k3, chordal4):
    assert len(list(enumerate_cliques(k3.graph))) == 8
    assert len(list(enumerate_cliques(chordal4.graph))) == 10
    assert len(list(enumerate_cliques(empty_graph(5)))) == 6


@given(graphs())
def test_enumeration_is_lexicographic_and_complete(g):
    got = list(enumerate_cliques(g))
    assert got[0] == ()
    assert got == sorted(got)
    want = sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(to_nx(g)))
    assert sorted(got[1:]) == want


def test_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceeded):
        list(enumerate_cliques(complete_graph(5), budget=10))
    monkeypatch.setenv("BCLIQUE_BUDGET", "4")
    with pytest.raises(BudgetExceeded, match="BCLIQUE_BUDGET"):
        cbpoly_bruteforce(complete_graph(3), ())
    monkeypatch.setenv("BCLIQUE_BUDGET", "lots")
    with pytest.raises(ValueError):
        cbpoly_bruteforce(complete_graph(3), ())


def test_golden_polynomials(k3, chordal4):
    for fn in (cbpoly_bruteforce, cbpoly_vertex_recurrence, cbpoly_edge_recurrence):
        assert fn(k3.graph, k3.B) == K3_POLY
        assert fn(chordal4.graph, chordal4.B) == CHORDAL4_POLY
    peo = Peo(chordal4.graph, (0, 1, 2, 3))
    assert cbpoly_peo(chordal4.graph, chordal4.B, peo) == CHORDAL4_POLY


def test_peo_partial_steps(chordal4):
    steps = peo_steps(chordal4.graph, chordal4.B, Peo(chordal4.graph, (0, 1, 2, 3)))
    assert steps[0] == BivariatePoly({(0, 0): 1, (1, 0): 1})
    assert steps[1] == BivariatePoly({(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 1): 1})
    assert steps[2] == BivariatePoly({(0, 0): 1, (1, 0): 1, (1, 1): 2, (2, 1): 1, (2, 2): 1})
    # the last vertex contributes x (1 + xy)^2
    assert steps[3] - steps[2] == BivariatePoly({(1, 0): 1, (2, 1): 2, (3, 2): 1})


def test_base_cases():
    one = empty_graph(1)
    assert cbpoly_vertex_recurrence(one, {0}) == BivariatePoly({(0, 0): 1, (1, 1): 1})
    edge = complete_graph(2)
    assert cbpoly_edge_recurrence(edge, {0, 1}) == BivariatePoly({(0, 0): 1, (1, 1): 2, (2, 2): 1})


def test_peo_requires_matching_graph(chordal4):
    other = Peo(path_graph(4), (0, 1, 2, 3))
    with pytest.raises(GraphError):
        cbpoly_peo(chordal4.graph, chordal4.B, other)
    with pytest.raises(GraphError):
        cbpoly_peo(chordal4.graph, chordal4.B, (0, 1, 2, 3))


@given(graphs_with_b(max_n=8))
def test_strategies_agree_with_oracle(gb):
    g, B = gb
    want = oracle_poly(g, B)
    assert cbpoly_bruteforce(g, B) == want
    assert cbpoly_vertex_recurrence(g, B) == want
    assert cbpoly_edge_recurrence(g, B) == want
    peo = is_chordal(g)
    if peo is not None:
        assert cbpoly_peo(g, B, peo) == want


@given(graphs(max_n=8))
def test_specializations(g):
    classical = classical_clique_poly(g)
    full = cbpoly_bruteforce(g, range(g.n))
    none = cbpoly_bruteforce(g, ())
    assert full.terms == {(i, i): c for i, c in enumerate(classical) if c}
    assert none.terms == {(i, 0): c for i, c in enumerate(classical) if c}


@given(graphs_with_b())
def test_total_clique_count(gb):
    g, B = gb
    assert cbpoly_bruteforce(g, B).eval_exact(1, 1) == 1 + sum(1 for _ in nx.enumerate_all_cliques(to_nx(g)))


# weighted polynomials


def test_weighted_examples(chordal4):
    assert weighted_cbpoly(empty_graph(1), {0}, {0: 3}) == BivariatePoly({(0, 0): 1, (1, 3): 1})
    p = weighted_cbpoly(chordal4.graph, chordal4.B, {1: 2, 2: 1})
    # the triangle v2 v3 v4 carries weight 3
    assert p.coeff(3, 3) == 1 and p.coeff(3, 2) == 0
    with pytest.raises(ValueError):
        weighted_cbpoly(chordal4.graph, chordal4.B, {1: 0, 2: 1})
    with pytest.raises(ValueError):
        weighted_cbpoly(chordal4.graph, chordal4.B, {1: 2})


@given(graphs_with_b())
def test_unit_weights_reduce_to_unweighted(gb):
    g, B = gb
    assert weighted_cbpoly(g, B, {v: 1 for v in B}) == cbpoly_bruteforce(g, B)


@given(graphs_with_b(), st.data())
def test_weights_invisible_at_y_one(gb, data):
    g, B = gb
    w = {v: data.draw(st.integers(1, 5)) for v in sorted(B)}
    assert weighted_cbpoly(g, B, w).section_at_y(1) == cbpoly_bruteforce(g, B).section_at_y(1)


# the multiaffine vertex polynomial


def test_multiaffine_examples():
    f = multiaffine_vertex_poly(complete_graph(2))
    assert f([2, 3]) == 1 + 2 + 3 + 6
    p3 = multiaffine_vertex_poly(path_graph(3))
    assert p3([5, 5, 5]) == 1 + 3 * 5 + 2 * 25
    c4 = cycle_graph(4)
    assert multiaffine_vertex_poly(c4).specialize({0}) == cbpoly_bruteforce(c4, {0})
    with pytest.raises(GraphError, match="triangle"):
        multiaffine_vertex_poly(complete_graph(3))
    with pytest.raises(ValueError):
        f([1])


@given(graphs_with_b())
def test_multiaffine_specialization_identity(gb):
    g, B = gb
    if is_triangle_free(g):
        assert multiaffine_vertex_poly(g).specialize(B) == cbpoly_bruteforce(g, B)
