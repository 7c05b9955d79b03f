"""Refutation battery for real stability of bivariate polynomials.

Nothing here proves stability. A real-stable P restricts to a real-rooted
polynomial on every line t -> (a t + c, b t + d) with a, b > 0, and every real
y-section of P is real-rooted; a failure of either is an exact certificate
that P is not real-stable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .cliques import cbpoly_bruteforce, cbpoly_peo, multiaffine_vertex_poly
from .graph import Graph, Peo, check_neighborhood_geometry, find_triangle, stability_hypotheses
from .poly import BivariatePoly, UnivariatePoly, count_real_roots, is_real_rooted, square_free
from .report import CheckReport, Verdict, frac_str

DEFAULT_SECTION_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))
DEFAULT_TRIALS = 200
MAX_HEIGHT = 64
NOT_A_PROOF = "necessary-condition pass only; not a proof of stability"


def section_realrooted_scan(P: BivariatePoly, y_grid: Iterable = DEFAULT_SECTION_GRID) -> CheckReport:
    claim = "section-real-rootedness"
    if P.is_zero():
        raise ValueError("zero polynomial")
    rows = []
    for y0 in y_grid:
        y0 = Fraction(y0)
        sec = P.section_at_y(y0)
        ok = sec.is_zero() or is_real_rooted(sec)
        rows.append({"y": frac_str(y0), "real_rooted": ok})
        if not ok:
            witness = {"polynomial": P.to_json(), "y": frac_str(y0), "section": sec.to_json()}
            return CheckReport(claim, Verdict.VIOLATED, witness, [], {"rows": rows})
    return CheckReport(claim, Verdict.HOLDS, None, [NOT_A_PROOF], {"rows": rows})


def sample_line(rng: random.Random) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    def pos():
        return Fraction(rng.randint(1, MAX_HEIGHT), rng.randint(1, MAX_HEIGHT))

    def signed():
        q = pos()
        return q if rng.random() < 0.5 else -q

    return pos(), pos(), signed(), signed()


def restriction_is_real_rooted(P: BivariatePoly, line) -> bool:
    r = P.substitute_line(*line)
    return r.is_zero() or is_real_rooted(r)


def line_restriction_refute(P: BivariatePoly, trials: int = DEFAULT_TRIALS, seed: int = 0) -> CheckReport:
    """Search for a line on which P is not real-rooted.

    Trial 0 is the diagonal t -> (t, t); the rest are seeded random lines.
    """
    claim = "line-restriction"
    if P.is_zero():
        raise ValueError("zero polynomial")
    rng = random.Random(seed)
    for trial in range(trials):
        line = (Fraction(1), Fraction(1), Fraction(0), Fraction(0)) if trial == 0 else sample_line(rng)
        if not restriction_is_real_rooted(P, line):
            a, b, c, d = line
            witness = {
                "polynomial": P.to_json(),
                "trial": trial,
                "a": frac_str(a),
                "b": frac_str(b),
                "c": frac_str(c),
                "d": frac_str(d),
                "restriction": P.substitute_line(*line).to_json(),
            }
            return CheckReport(claim, Verdict.VIOLATED, witness, ["exact certificate: P is not real-stable"],
                               {"trials_run": trial + 1, "seed": seed})
    return CheckReport(claim, Verdict.UNRESOLVED, None, [f"no refutation found in {trials} trials"],
                       {"trials_run": trials, "seed": seed})


def replay_line_restriction(witness: dict) -> bool:
    """Recompute the witness restriction from scratch; True if it still refutes."""
    P = BivariatePoly.from_json(witness["polynomial"])
    line = [Fraction(witness[k]) for k in "abcd"]
    if not (line[0] > 0 and line[1] > 0):
        return False
    r = P.substitute_line(*line)
    if r.is_zero():
        return False
    sf = square_free(r)
    return sf.degree > count_real_roots(sf)


def replay_section(witness: dict) -> bool:
    P = BivariatePoly.from_json(witness["polynomial"])
    sec = P.section_at_y(Fraction(witness["y"]))
    return not sec.is_zero() and not is_real_rooted(sec)


def _battery(P: BivariatePoly, trials: int, seed: int, y_grid) -> tuple[Verdict, dict, list[CheckReport]]:
    scan = section_realrooted_scan(P, y_grid)
    refute = line_restriction_refute(P, trials, seed)
    subs = [scan, refute]
    verdict = Verdict.VIOLATED if any(r.violated for r in subs) else Verdict.CONSISTENT
    return verdict, {"polynomial": P.to_json()}, subs


def _first_witness(subs: list[CheckReport]) -> dict:
    for r in subs:
        if r.violated:
            return {"source": r.claim, **r.witness}
    raise AssertionError("no violated sub-report")


def check_main_stability_theorem(
    g: Graph,
    B: Iterable[int],
    r: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    y_grid=DEFAULT_SECTION_GRID,
) -> CheckReport:
    """r-connected, K_{r+3}-free, chordal => C_B(G;x,y) real-stable, probed by refutation."""
    claim = "chordal-stability"
    B = frozenset(B)
    audit = stability_hypotheses(g, r)
    failing = [h for h in ("r_connected", "kr3_free", "chordal") if not audit[h]]
    details = {"hypotheses": audit, "B": g.label_set(B)}
    if failing:
        notes = [f"hypothesis fails: {h}" for h in failing]
        if not audit["r_connected"]:
            notes.append(f"vertex connectivity is {audit['connectivity']} < r = {r}")
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, notes, details)
    peo = Peo(g, tuple(g.index_of(lab) for lab in audit["peo"]))
    P = cbpoly_peo(g, B, peo)
    if P != cbpoly_bruteforce(g, B):
        raise AssertionError("PEO accumulation disagrees with enumeration")
    geometry = check_neighborhood_geometry(g, r)
    verdict, extra, subs = _battery(P, trials, seed, y_grid)
    details.update(extra)
    details["neighborhood_geometry"] = geometry.verdict.value
    details["subchecks"] = [s.to_json() for s in subs]
    if verdict is Verdict.VIOLATED:
        witness = {"graph": g.to_json(), "B": g.label_set(B), "r": r, **_first_witness(subs)}
        return CheckReport(claim, verdict, witness, [], details)
    return CheckReport(claim, verdict, None, [NOT_A_PROOF], details)


def triangle_free_stability_check(
    g: Graph,
    B: Iterable[int],
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    y_grid=DEFAULT_SECTION_GRID,
) -> CheckReport:
    claim = "triangle-free-stability"
    B = frozenset(B)
    tri = find_triangle(g)
    if tri is not None:
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, [f"triangle {g.label_set(tri)}"], {})
    P = multiaffine_vertex_poly(g).specialize(B)
    identity = P == cbpoly_bruteforce(g, B)
    verdict, details, subs = _battery(P, trials, seed, y_grid)
    details["specialization_identity"] = identity
    details["subchecks"] = [s.to_json() for s in subs]
    if not identity:
        witness = {"graph": g.to_json(), "B": g.label_set(B), "source": "specialization-identity"}
        return CheckReport(claim, Verdict.VIOLATED, witness, ["F_H specialization differs from enumeration"], details)
    if verdict is Verdict.VIOLATED:
        witness = {"graph": g.to_json(), "B": g.label_set(B), **_first_witness(subs)}
        return CheckReport(claim, verdict, witness, [], details)
    return CheckReport(claim, verdict, None, [NOT_A_PROOF], details)


def replay_stability(witness: dict) -> bool:
    source = witness.get("source", "line-restriction")
    if source == "line-restriction":
        return replay_line_restriction(witness)
    if source == "section-real-rootedness":
        return replay_section(witness)
    if source == "specialization-identity":
        g = Graph.from_json(witness["graph"])
        B = frozenset(g.index_of(b) for b in witness["B"])
        return multiaffine_vertex_poly(g).specialize(B) != cbpoly_bruteforce(g, B)
    return False
