"""Weighted B-clique polynomials, graph homomorphisms and the monotonicity
claims relating them. All comparisons are exact rational evaluations."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .analysis import zeta_of
from .cliques import enumerate_cliques, weighted_cbpoly
from .graph import Graph, GraphFile, GraphFormatError, bits, parse_graph
from .poly import DEFAULT_WIDTH, Order, compare_zeta, refine
from .report import CheckReport, Verdict, frac_str

X_GRID = tuple(Fraction(v) for v in ("0", "1/4", "1/2", "1", "2"))
Y_GRID = X_GRID
NEG_X_GRID = tuple(-x for x in X_GRID)
Y_AT_LEAST_ONE = tuple(y for y in Y_GRID if y >= 1)


def unit_weights(B: Iterable[int]) -> dict[int, int]:
    return {v: 1 for v in B}


def _check_weights(B: frozenset, w: Mapping[int, int]):
    if set(w) != set(B):
        raise ValueError("weight function must be defined exactly on B")
    if any(not isinstance(x, int) or x < 1 for x in w.values()):
        raise ValueError("weights must be positive integers")


def _weights_json(g: Graph, w: Mapping[int, int]) -> dict[str, int]:
    return {str(g.labels[v]): w[v] for v in sorted(w)}


def _weights_from_json(g: Graph, data: Mapping[str, int]) -> dict[int, int]:
    return {g.index_of(int(k)): int(v) for k, v in data.items()}


def check_weight_monotonicity(g: Graph, B, w1, w2, xs=NEG_X_GRID, ys=Y_AT_LEAST_ONE,
                              companion_xs=X_GRID) -> CheckReport:
    """C_{B,w1} <= C_{B,w2} for x <= 0, y >= 1 when w1 <= w2 pointwise.

    The verdict covers the stated regime (``xs``); the x >= 0 sweep is
    recorded separately under ``details['companion']``.
    """
    claim = "weight-monotonicity"
    B = frozenset(B)
    _check_weights(B, w1)
    _check_weights(B, w2)
    if any(w1[v] > w2[v] for v in B):
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, ["w1 <= w2 fails pointwise"], {})
    p1, p2 = weighted_cbpoly(g, B, w1), weighted_cbpoly(g, B, w2)

    def sweep(grid_x):
        bad = []
        for x in grid_x:
            for y in ys:
                lhs, rhs = p1.eval_exact(x, y), p2.eval_exact(x, y)
                if lhs > rhs:
                    bad.append({"x": frac_str(x), "y": frac_str(y), "lhs": frac_str(lhs), "rhs": frac_str(rhs)})
        return bad

    stated, companion = sweep(xs), sweep(companion_xs)
    details = {
        "stated_regime": {"x": [frac_str(x) for x in xs], "y": [frac_str(y) for y in ys],
                          "violations": stated},
        "companion": {"x": [frac_str(x) for x in companion_xs], "y": [frac_str(y) for y in ys],
                      "verdict": "violated" if companion else "holds", "violations": companion},
    }
    notes = ["the stated regime is x <= 0; the x >= 0 sweep is reported alongside without deciding intent"]
    if stated:
        witness = {"graph": g.to_json(), "B": g.label_set(B), "w1": _weights_json(g, w1),
                   "w2": _weights_json(g, w2), **stated[0]}
        return CheckReport(claim, Verdict.VIOLATED, witness, notes, details)
    return CheckReport(claim, Verdict.HOLDS, None, notes, details)


def check_weighted_root_monotonicity(g: Graph, B, w1, w2, ys=Y_AT_LEAST_ONE) -> CheckReport:
    """zeta for w2 is at least zeta for w1 when w1 <= w2 and y >= 1."""
    claim = "weighted-root-monotonicity"
    B = frozenset(B)
    _check_weights(B, w1)
    _check_weights(B, w2)
    if any(w1[v] > w2[v] for v in B):
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, ["w1 <= w2 fails pointwise"], {})
    p1, p2 = weighted_cbpoly(g, B, w1), weighted_cbpoly(g, B, w2)
    rows = []
    for y in ys:
        z1, z2 = zeta_of(p1, y, 1), zeta_of(p2, y, 1)
        order = compare_zeta(z2, z1)
        rows.append({"y": frac_str(y), "order_w2_vs_w1": order.value})
        if order is Order.LT:
            witness = {"graph": g.to_json(), "B": g.label_set(B), "w1": _weights_json(g, w1),
                       "w2": _weights_json(g, w2), "y": frac_str(y),
                       "zeta_w1": refine(z1.poly, z1.zeta, DEFAULT_WIDTH).to_json(),
                       "zeta_w2": refine(z2.poly, z2.zeta, DEFAULT_WIDTH).to_json() if z2.zeta else "-inf"}
            return CheckReport(claim, Verdict.VIOLATED, witness, [], {"rows": rows})
    return CheckReport(claim, Verdict.HOLDS, None, [], {"rows": rows})


@dataclass(frozen=True)
class Homomorphism:
    source: Graph
    target: Graph
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.n:
            raise ValueError("the map must be total on the source vertices")
        if any(not 0 <= u < self.target.n for u in self.mapping):
            raise ValueError("map sends a vertex outside the target")

    def fiber(self, u: int) -> list[int]:
        return [v for v, fu in enumerate(self.mapping) if fu == u]

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def to_json(self) -> dict:
        s, t = self.source, self.target
        return {
            "source": s.to_json(),
            "target": t.to_json(),
            "map": {str(s.labels[v]): t.labels[u] for v, u in enumerate(self.mapping)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Homomorphism":
        s, t = Graph.from_json(data["source"]), Graph.from_json(data["target"])
        mapping = [0] * s.n
        for k, u in data["map"].items():
            mapping[s.index_of(int(k))] = t.index_of(int(u))
        return cls(s, t, tuple(mapping))


def validate_homomorphism(f: Homomorphism, require_surjective: bool = True) -> CheckReport:
    claim = "homomorphism"
    g, h = f.source, f.target
    for u, v in g.edges():
        a, b = f.mapping[u], f.mapping[v]
        if not h.has_edge(a, b):
            witness = {**f.to_json(), "edge": [g.labels[u], g.labels[v]],
                       "image": [h.labels[a], h.labels[b]],
                       "reason": "collapsed edge" if a == b else "image is not an edge"}
            return CheckReport(claim, Verdict.VIOLATED, witness, [], {})
    if require_surjective:
        covered = set(f.mapping)
        for u in range(h.n):
            if u not in covered:
                witness = {**f.to_json(), "uncovered": h.labels[u], "reason": "not surjective"}
                return CheckReport(claim, Verdict.VIOLATED, witness, [], {})
    return CheckReport(claim, Verdict.HOLDS, None, [], {"injective": f.is_injective()})


def induced_weights(f: Homomorphism, B_G: Iterable[int], w_G: Optional[Mapping[int, int]] = None):
    """B_H = f(B_G) and w_H(u) = sum of w_G over the part of u's fibre inside B_G."""
    B_G = frozenset(B_G)
    w_G = unit_weights(B_G) if w_G is None else w_G
    _check_weights(B_G, w_G)
    w_H: dict[int, int] = {}
    for v in sorted(B_G):
        u = f.mapping[v]
        w_H[u] = w_H.get(u, 0) + w_G[v]
    return frozenset(w_H), w_H


def check_clique_lift(f: Homomorphism) -> CheckReport:
    """For every clique K of H, the full preimage of K should be a clique of G."""
    claim = "clique-lift"
    g, h = f.source, f.target
    fibers = [0] * h.n
    for v, u in enumerate(f.mapping):
        fibers[u] |= 1 << v
    checked = 0
    for k in enumerate_cliques(h):
        pre = 0
        for u in k:
            pre |= fibers[u]
        checked += 1
        for a in bits(pre):
            missing = pre & ~g.adj[a] & ~(1 << a)
            if missing:
                b = (missing & -missing).bit_length() - 1
                witness = {**f.to_json(), "clique_H": h.label_set(k),
                           "preimage": g.label_set(bits(pre)),
                           "non_adjacent": sorted([g.labels[a], g.labels[b]])}
                notes = [] if f.is_injective() else ["f is not injective: fibres are independent sets"]
                return CheckReport(claim, Verdict.VIOLATED, witness, notes, {"cliques_checked": checked})
    return CheckReport(claim, Verdict.HOLDS, None, [], {"cliques_checked": checked})


def check_hom_monotonicity(f: Homomorphism, B_G, w_G=None, xs=X_GRID, ys=Y_GRID, zeta_ys=Y_GRID) -> CheckReport:
    """C_{B_H,w_H}(H) <= C_{B_G,w_G}(G) on a grid of x, y >= 0, and zeta_G >= zeta_H per y."""
    claim = "hom-monotonicity"
    valid = validate_homomorphism(f)
    if not valid.verdict is Verdict.HOLDS:
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None,
                           [f"not a surjective homomorphism: {valid.witness.get('reason')}"], {})
    g, h = f.source, f.target
    B_G = frozenset(B_G)
    w_G = unit_weights(B_G) if w_G is None else dict(w_G)
    B_H, w_H = induced_weights(f, B_G, w_G)
    pg, ph = weighted_cbpoly(g, B_G, w_G), weighted_cbpoly(h, B_H, w_H)
    point_bad, zeta_bad, zeta_rows = [], [], []
    for x in xs:
        for y in ys:
            lhs, rhs = ph.eval_exact(x, y), pg.eval_exact(x, y)
            if lhs > rhs:
                point_bad.append({"x": frac_str(x), "y": frac_str(y), "C_H": frac_str(lhs), "C_G": frac_str(rhs)})
    for y in zeta_ys:
        zg, zh = zeta_of(pg, y, 1), zeta_of(ph, y, 1)
        order = compare_zeta(zg, zh)
        zeta_rows.append({"y": frac_str(y), "order_G_vs_H": order.value})
        if order is Order.LT:
            zeta_bad.append({"y": frac_str(y),
                             "zeta_G": refine(zg.poly, zg.zeta, DEFAULT_WIDTH).to_json() if zg.zeta else "-inf",
                             "zeta_H": refine(zh.poly, zh.zeta, DEFAULT_WIDTH).to_json()})
    details = {
        "B_H": h.label_set(B_H),
        "w_H": _weights_json(h, w_H),
        "pointwise": {"verdict": "violated" if point_bad else "holds", "violations": point_bad},
        "zeta": {"verdict": "violated" if zeta_bad else "holds", "rows": zeta_rows, "violations": zeta_bad},
    }
    notes = []
    if any(len(f.fiber(u)) > 1 for u in range(h.n)):
        notes.append("f is not injective; the monomial comparison needs x >= 1 when preimages are larger")
    if point_bad or zeta_bad:
        witness = {**f.to_json(), "B_G": g.label_set(B_G), "w_G": _weights_json(g, w_G),
                   "pointwise_violations": point_bad, "zeta_violations": zeta_bad}
        return CheckReport(claim, Verdict.VIOLATED, witness, notes, details)
    return CheckReport(claim, Verdict.HOLDS, None, notes, details)


def parse_hom_file(text: str, base_dir: str = ".") -> tuple[GraphFile, GraphFile, Homomorphism]:
    """``g <file>``, ``h <file>`` and one ``m <u_in_G> <v_in_H>`` line per source vertex."""
    paths: dict[str, tuple[str, int]] = {}
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *args = line.split()
        if tag in ("g", "h"):
            if len(args) != 1:
                raise GraphFormatError(lineno, f"expected '{tag} <graphfile>'")
            if tag in paths:
                raise GraphFormatError(lineno, f"duplicate '{tag}' line")
            paths[tag] = (os.path.join(base_dir, args[0]), lineno)
        elif tag == "m":
            if len(args) != 2 or not all(a.isdigit() for a in args):
                raise GraphFormatError(lineno, "expected 'm <u_in_G> <v_in_H>'")
            pairs.append((int(args[0]), int(args[1]), lineno))
        else:
            raise GraphFormatError(lineno, f"unknown line type {tag!r}")
    for tag in ("g", "h"):
        if tag not in paths:
            raise GraphFormatError(1, f"missing '{tag} <graphfile>' line")
    files = {}
    for tag, (path, lineno) in paths.items():
        try:
            with open(path, encoding="utf-8") as fh:
                files[tag] = parse_graph(fh.read())
        except OSError as exc:
            raise GraphFormatError(lineno, f"cannot read {path}: {exc.strerror}") from None
        except GraphFormatError as exc:
            raise GraphFormatError(lineno, f"in {path}: {exc}") from None
    G, H = files["g"].graph, files["h"].graph
    mapping: dict[int, int] = {}
    for u, v, lineno in pairs:
        if not 1 <= u <= G.n:
            raise GraphFormatError(lineno, f"source vertex {u} out of range 1..{G.n}")
        if not 1 <= v <= H.n:
            raise GraphFormatError(lineno, f"target vertex {v} out of range 1..{H.n}")
        if u - 1 in mapping:
            raise GraphFormatError(lineno, f"source vertex {u} mapped twice")
        mapping[u - 1] = v - 1
    missing = [v + 1 for v in range(G.n) if v not in mapping]
    if missing:
        raise GraphFormatError(pairs[-1][2] if pairs else 1, f"no image for source vertices {missing}")
    return files["g"], files["h"], Homomorphism(G, H, tuple(mapping[v] for v in range(G.n)))


def replay_weighted(claim: str, witness: dict) -> bool:
    if claim in ("weight-monotonicity", "weighted-root-monotonicity"):
        g = Graph.from_json(witness["graph"])
        B = frozenset(g.index_of(b) for b in witness["B"])
        w1 = _weights_from_json(g, witness["w1"])
        w2 = _weights_from_json(g, witness["w2"])
        if claim == "weight-monotonicity":
            rep = check_weight_monotonicity(g, B, w1, w2, [Fraction(witness["x"])], [Fraction(witness["y"])], ())
        else:
            rep = check_weighted_root_monotonicity(g, B, w1, w2, [Fraction(witness["y"])])
        return rep.violated
    f = Homomorphism.from_json(witness)
    if claim == "clique-lift":
        k = [f.target.index_of(u) for u in witness["clique_H"]]
        a, b = (f.source.index_of(v) for v in witness["non_adjacent"])
        pre = {v for v, u in enumerate(f.mapping) if u in k}
        return a in pre and b in pre and not f.source.has_edge(a, b)
    if claim == "hom-monotonicity":
        g = f.source
        B_G = frozenset(g.index_of(b) for b in witness["B_G"])
        w_G = _weights_from_json(g, witness["w_G"])
        ok = True
        for pt in witness["pointwise_violations"]:
            ok &= check_hom_monotonicity(f, B_G, w_G, [Fraction(pt["x"])], [Fraction(pt["y"])], ()).violated
        for zr in witness["zeta_violations"]:
            ok &= check_hom_monotonicity(f, B_G, w_G, (), (), [Fraction(zr["y"])]).violated
        return ok
    if claim == "homomorphism":
        return validate_homomorphism(f).violated
    return False
