"""Four independent ways of computing the B-restricted clique polynomial.

* :func:`cbpoly_bruteforce` counts cliques from an explicit enumeration.
* :func:`cbpoly_vertex_recurrence` deletes a vertex and recurses into its
  neighbourhood.
* :func:`cbpoly_edge_recurrence` deletes an edge and recurses into the common
  neighbourhood of its ends.
* :func:`cbpoly_peo` accumulates along a perfect elimination ordering.

The recurrences memoize per call, keyed on the exact labelled subproblem.
"""

from __future__ import annotations

import os
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .graph import Graph, GraphError, Peo, bits, find_triangle, popcount, to_mask
from .poly import BivariatePoly

DEFAULT_BUDGET = 2**26


class BudgetExceeded(RuntimeError):
    pass


def clique_budget() -> int:
    raw = os.environ.get("BCLIQUE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"BCLIQUE_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("BCLIQUE_BUDGET must be positive")
    return value


def enumerate_cliques(g: Graph, budget: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Yield every clique once, empty clique first, in lexicographic order."""
    budget = clique_budget() if budget is None else budget
    emitted = 0
    stack: list[tuple[tuple[int, ...], int]] = [((), g.all_mask)]
    # depth-first with candidates restricted to larger indices gives lex order
    while stack:
        clique, cand = stack.pop()
        emitted += 1
        if emitted > budget:
            raise BudgetExceeded(f"more than {budget} cliques; raise BCLIQUE_BUDGET to continue")
        yield clique
        children = []
        for v in bits(cand):
            children.append((clique + (v,), cand & g.adj[v] & ~((2 << v) - 1)))
        stack.extend(reversed(children))


def cbpoly_bruteforce(g: Graph, B: Iterable[int]) -> BivariatePoly:
    bmask = to_mask(B)
    counts: dict[tuple[int, int], int] = {}
    for k in enumerate_cliques(g):
        key = (len(k), sum(1 for v in k if bmask >> v & 1))
        counts[key] = counts.get(key, 0) + 1
    return BivariatePoly(counts)


def classical_clique_poly(g: Graph) -> list[int]:
    """Coefficients c_i of C(G; x) by a separate bitset count (no B bookkeeping)."""
    counts = [0] * (g.n + 1)

    def grow(size: int, cand: int):
        counts[size] += 1
        while cand:
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            grow(size + 1, cand & g.adj[v])

    grow(0, g.all_mask)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def _check_budget(calls: list[int], budget: int):
    calls[0] += 1
    if calls[0] > budget:
        raise BudgetExceeded(f"recursion exceeded {budget} steps; raise BCLIQUE_BUDGET to continue")


def cbpoly_vertex_recurrence(g: Graph, B: Iterable[int]) -> BivariatePoly:
    bmask = to_mask(B)
    budget = clique_budget()
    memo: dict[tuple[int, int], BivariatePoly] = {}
    calls = [0]
    one = BivariatePoly.one()

    def rec(mask: int) -> BivariatePoly:
        if mask == 0:
            return one
        key = (mask, bmask & mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        _check_budget(calls, budget)
        v = min(bits(mask), key=lambda u: (popcount(g.adj[u] & mask), u))
        rest = rec(mask & ~(1 << v))
        nbhd = rec(g.adj[v] & mask)
        out = rest + nbhd.shift(1, bmask >> v & 1)
        memo[key] = out
        return out

    return rec(g.all_mask)


def cbpoly_edge_recurrence(g: Graph, B: Iterable[int]) -> BivariatePoly:
    bmask = to_mask(B)
    budget = clique_budget()
    memo: dict[tuple, BivariatePoly] = {}
    calls = [0]

    def rec(adj: tuple[int, ...], mask: int) -> BivariatePoly:
        # adj is indexed by original vertex; only entries in mask are meaningful
        key = (mask, bmask & mask, tuple(adj[v] for v in bits(mask)))
        hit = memo.get(key)
        if hit is not None:
            return hit
        _check_budget(calls, budget)
        best = None
        for u in bits(mask):
            for v in bits(adj[u] & ~((2 << u) - 1)):
                common = popcount(adj[u] & adj[v])
                if best is None or common > best[0]:
                    best = (common, u, v)
        if best is None:
            terms: dict[tuple[int, int], int] = {(0, 0): 1}
            for v in bits(mask):
                k = (1, bmask >> v & 1)
                terms[k] = terms.get(k, 0) + 1
            out = BivariatePoly(terms)
        else:
            _, u, v = best
            smaller = list(adj)
            smaller[u] &= ~(1 << v)
            smaller[v] &= ~(1 << u)
            common = adj[u] & adj[v]
            inner = tuple(a & common for a in adj)
            out = rec(tuple(smaller), mask) + rec(inner, common).shift(
                2, (bmask >> u & 1) + (bmask >> v & 1)
            )
        memo[key] = out
        return out

    return rec(g.adj, g.all_mask)


def peo_steps(g: Graph, B: Iterable[int], peo: Peo) -> list[BivariatePoly]:
    """C_B(G_i) for i = 1..n along the ordering (G_i = first i vertices)."""
    if not isinstance(peo, Peo) or peo.graph != g:
        raise GraphError("cbpoly_peo needs a Peo verified for this graph")
    bmask = to_mask(B)
    current = BivariatePoly.one()
    steps = []
    for v, earlier in peo.earlier_neighbors():
        contribution = BivariatePoly.monomial(1, bmask >> v & 1)
        for u in bits(earlier):
            contribution = contribution * BivariatePoly({(0, 0): 1, (1, bmask >> u & 1): 1})
        current = current + contribution
        steps.append(current)
    return steps


def cbpoly_peo(g: Graph, B: Iterable[int], peo: Peo) -> BivariatePoly:
    steps = peo_steps(g, B, peo)
    return steps[-1] if steps else BivariatePoly.one()


def weighted_cbpoly(g: Graph, B: Iterable[int], w: Mapping[int, int]) -> BivariatePoly:
    """Coefficient (i, t) counts cliques of size i whose B-weight is t."""
    B = frozenset(B)
    for v in B:
        wt = w.get(v)
        if not isinstance(wt, int) or isinstance(wt, bool) or wt < 1:
            raise ValueError(f"weight of vertex {g.labels[v]} must be a positive integer, got {wt!r}")
    counts: dict[tuple[int, int], int] = {}
    for k in enumerate_cliques(g):
        key = (len(k), sum(w[v] for v in k if v in B))
        counts[key] = counts.get(key, 0) + 1
    return BivariatePoly(counts)


class MultiaffinePoly:
    """F_H(u) = 1 + sum_v u_v + sum_{uv in E} u_u u_v for a triangle-free H."""

    def __init__(self, g: Graph):
        tri = find_triangle(g)
        if tri is not None:
            raise GraphError(f"graph has a triangle {g.label_set(tri)}; F_H needs a triangle-free graph")
        self.graph = g
        self.edges = g.edges()

    def __call__(self, u: Sequence[complex]) -> complex:
        if len(u) != self.graph.n:
            raise ValueError("one value per vertex is required")
        return 1 + sum(u) + sum(u[a] * u[b] for a, b in self.edges)

    def specialize(self, B: Iterable[int]) -> BivariatePoly:
        """Substitute u_v = x (v not in B) or x*y (v in B)."""
        bmask = to_mask(B)
        terms: dict[tuple[int, int], int] = {(0, 0): 1}

        def add(key):
            terms[key] = terms.get(key, 0) + 1

        for v in range(self.graph.n):
            add((1, bmask >> v & 1))
        for a, b in self.edges:
            add((2, (bmask >> a & 1) + (bmask >> b & 1)))
        return BivariatePoly(terms)


def multiaffine_vertex_poly(g: Graph) -> MultiaffinePoly:
    return MultiaffinePoly(g)


STRATEGIES: dict[str, Callable] = {
    "brute": cbpoly_bruteforce,
    "vertex": cbpoly_vertex_recurrence,
    "edge": cbpoly_edge_recurrence,
}
