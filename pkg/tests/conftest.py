import itertools
import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from bclique.graph import Graph, parse_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def graphs_with_b(draw, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    B = draw(st.frozensets(st.integers(0, g.n - 1)))
    return g, B


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def load(name: str):
    with open(os.path.join(DATA, name), encoding="utf-8") as fh:
        return parse_graph(fh.read())


@pytest.fixture
def k3():
    return parse_graph("n 3\ne 1 2\ne 1 3\ne 2 3\nb 2 3\n")


@pytest.fixture
def chordal4():
    return parse_graph("n 4\ne 1 2\ne 2 3\ne 3 4\ne 2 4\nb 2 3\n")
