"""Largest negative root of y-sections and checkers for the root-monotonicity
theorems and the independence / girth bounds derived from them."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cliques import cbpoly_bruteforce
from .graph import Graph, b_girth, b_independence, induced_subgraph
from .poly import (
    DEFAULT_WIDTH,
    BivariatePoly,
    Order,
    RootAnalysis,
    compare_to_rational,
    compare_zeta,
    isolate_negative_roots,
)
from .report import CheckReport, Verdict, frac_str

DEFAULT_Y_GRID = tuple(Fraction(k, 4) for k in range(5))
COARSE = Fraction(1)

# Shown in every independence / girth report.
INDEPENDENCE_FOOTER = (
    "the independence-bound argument writes C_B(G[I];x,1) = (1+x)^alpha for an independent set I, "
    "but the clique polynomial of an edgeless set is 1 + alpha*x; the bound is checked as stated, "
    "which agrees with 1 + alpha*x"
)


def zeta_of(P: BivariatePoly, y, width=DEFAULT_WIDTH) -> RootAnalysis:
    return isolate_negative_roots(P.section_at_y(Fraction(y)), width)


def zeta(g: Graph, B: Iterable[int], y, width=DEFAULT_WIDTH) -> RootAnalysis:
    y = Fraction(y)
    if y < 0:
        raise ValueError("y must be nonnegative")
    return zeta_of(cbpoly_bruteforce(g, B), y, width)


def _zeta_json(ra: RootAnalysis):
    return ra.zeta.to_json() if ra.zeta else "-inf"


def _instance_json(g: Graph, B) -> dict:
    return {"graph": g.to_json(), "B": g.label_set(B)}


def _remove_vertex(g: Graph, B, v: int):
    h, old = induced_subgraph(g, [u for u in range(g.n) if u != v])
    pos = {o: i for i, o in enumerate(old)}
    return h, frozenset(pos[u] for u in B if u != v)


def check_induced_monotonicity(g: Graph, B, v: Optional[int], y_grid=DEFAULT_Y_GRID) -> CheckReport:
    """zeta of G - v (with B minus v) must not exceed zeta of G at each y in the grid.

    ``v=None`` compares G with itself.
    """
    B = frozenset(B)
    claim = "induced-monotonicity"
    if v is None:
        h, bh = g, B
    else:
        h, bh = _remove_vertex(g, B, v)
    pg, ph = cbpoly_bruteforce(g, B), cbpoly_bruteforce(h, bh)
    rows, notes, unresolved = [], [], 0
    for y in y_grid:
        y = Fraction(y)
        zg, zh = zeta_of(pg, y, COARSE), zeta_of(ph, y, COARSE)
        order = compare_zeta(zh, zg)
        if zg.zeta is None or zh.zeta is None:
            notes.append(f"y={frac_str(y)}: no negative root on one side; -inf ordered below every root")
        if order is Order.UNRESOLVED:
            unresolved += 1
        rows.append({"y": frac_str(y), "order_H_vs_G": order.value})
        if order is Order.GT:
            witness = {
                **_instance_json(g, B),
                "vertex": g.labels[v] if v is not None else None,
                "y": frac_str(y),
                "zeta_H": _zeta_json(zh),
                "zeta_G": _zeta_json(zg),
            }
            return CheckReport(claim, Verdict.VIOLATED, witness, notes, {"rows": rows})
    details = {"rows": rows, "unresolved": unresolved}
    return CheckReport(claim, Verdict.HOLDS, None, notes, details)


def check_spanning_monotonicity(g: Graph, B, e: tuple[int, int], y_grid=DEFAULT_Y_GRID) -> CheckReport:
    """zeta of G must not exceed zeta of G - e at each y in the grid."""
    B = frozenset(B)
    claim = "spanning-monotonicity"
    h = g.without_edge(*e)
    pg, ph = cbpoly_bruteforce(g, B), cbpoly_bruteforce(h, B)
    rows, notes, unresolved = [], [], 0
    for y in y_grid:
        y = Fraction(y)
        zg, zh = zeta_of(pg, y, COARSE), zeta_of(ph, y, COARSE)
        order = compare_zeta(zg, zh)
        if zg.zeta is None or zh.zeta is None:
            notes.append(f"y={frac_str(y)}: no negative root on one side; -inf ordered below every root")
        if order is Order.UNRESOLVED:
            unresolved += 1
        rows.append({"y": frac_str(y), "order_G_vs_H": order.value})
        if order is Order.GT:
            witness = {
                **_instance_json(g, B),
                "edge": [g.labels[e[0]], g.labels[e[1]]],
                "y": frac_str(y),
                "zeta_G": _zeta_json(zg),
                "zeta_H": _zeta_json(zh),
            }
            return CheckReport(claim, Verdict.VIOLATED, witness, notes, {"rows": rows})
    return CheckReport(claim, Verdict.HOLDS, None, notes, {"rows": rows, "unresolved": unresolved})


def check_b_independence_bound(g: Graph, B) -> CheckReport:
    """alpha_B(G) <= -1 / zeta_G(B; 1)."""
    B = frozenset(B)
    claim = "b-independence-bound"
    alpha = b_independence(g, B)
    ra = zeta(g, B, 1)
    details = {"alphaB": alpha, "zeta": _zeta_json(ra)}
    notes = [INDEPENDENCE_FOOTER]
    if alpha == 0:
        return CheckReport(claim, Verdict.HOLDS, None, notes + ["B is empty; alpha_B = 0"], details)
    if ra.zeta is None:
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, notes + ["zeta_G(B;1) = -inf"], details)
    # alpha <= -1/zeta  <=>  zeta >= -1/alpha  (zeta < 0)
    order = compare_to_rational(ra, Fraction(-1, alpha))
    details["zeta_vs_minus_one_over_alpha"] = order.value
    if order is Order.EQ:
        notes.append("equality: alpha_B = -1/zeta exactly")
    if order is Order.LT:
        witness = {**_instance_json(g, B), "alphaB": alpha, "zeta": _zeta_json(ra)}
        return CheckReport(claim, Verdict.VIOLATED, witness, notes, details)
    return CheckReport(claim, Verdict.HOLDS, None, notes, details)


def floor_neg_two_over_zeta(ra: RootAnalysis) -> int:
    """Exact floor(-2 / zeta) for a finite zeta."""
    z = ra.zeta
    if z is None:
        raise ValueError("zeta is -inf")

    def at_least(k: int) -> bool:
        # -2/zeta >= k  <=>  zeta >= -2/k
        return compare_to_rational(ra, Fraction(-2, k)) in (Order.GT, Order.EQ)

    k = max(1, int(Fraction(2) / -z.lo))
    if not at_least(k):
        return 0
    while at_least(k + 1):
        k += 1
    return k


def check_b_girth_bound(g: Graph, B) -> CheckReport:
    """g_B(G) <= 2 + floor(-2 / zeta_G(B; 1))."""
    B = frozenset(B)
    claim = "b-girth-bound"
    girth = b_girth(g, B)
    notes = [INDEPENDENCE_FOOTER]
    if girth is None:
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, notes + ["G[B] is acyclic"], {"gB": None})
    ra = zeta(g, B, 1)
    details = {"gB": girth, "zeta": _zeta_json(ra)}
    if ra.zeta is None:
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, notes + ["zeta_G(B;1) = -inf"], details)
    fl = floor_neg_two_over_zeta(ra)
    details["bound"] = 2 + fl
    if girth > 2 + fl:
        witness = {**_instance_json(g, B), "gB": girth, "bound": 2 + fl, "zeta": _zeta_json(ra)}
        return CheckReport(claim, Verdict.VIOLATED, witness, notes, details)
    return CheckReport(claim, Verdict.HOLDS, None, notes, details)


def deletion_chain_reports(g: Graph, B, y_grid=DEFAULT_Y_GRID, seed: int = 0) -> list[CheckReport]:
    """Stepwise chains: delete vertices one at a time, then edges one at a time.

    Deletion orders are a seeded shuffle so the chains are reproducible.
    """
    rng = random.Random(seed)
    reports = []
    cur_g, cur_b = g, frozenset(B)
    order = list(range(g.n))
    rng.shuffle(order)
    # track vertices by label since indices shift after each deletion
    for label in [g.labels[v] for v in order[:-1]]:
        v = cur_g.index_of(label)
        reports.append(check_induced_monotonicity(cur_g, cur_b, v, y_grid))
        cur_g, cur_b = _remove_vertex(cur_g, cur_b, v)
    cur_g = g
    edges = g.edges()
    rng.shuffle(edges)
    for e in edges:
        reports.append(check_spanning_monotonicity(cur_g, B, e, y_grid))
        cur_g = cur_g.without_edge(*e)
    return reports


def replay_monotonicity(witness: dict) -> bool:
    g = Graph.from_json(witness["graph"])
    B = frozenset(g.index_of(b) for b in witness["B"])
    y = Fraction(witness["y"])
    if "vertex" in witness:
        v = witness["vertex"]
        rep = check_induced_monotonicity(g, B, None if v is None else g.index_of(v), [y])
    else:
        e = tuple(g.index_of(a) for a in witness["edge"])
        rep = check_spanning_monotonicity(g, B, e, [y])
    return rep.violated


def replay_extremal(claim: str, witness: dict) -> bool:
    g = Graph.from_json(witness["graph"])
    B = frozenset(g.index_of(b) for b in witness["B"])
    check = check_b_independence_bound if claim == "b-independence-bound" else check_b_girth_bound
    return check(g, B).violated
