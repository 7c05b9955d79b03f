"""Re-verify a serialized Violated report from its witness alone."""

from __future__ import annotations

from .analysis import replay_extremal, replay_monotonicity
from .graph import Graph, check_neighborhood_geometry
from .report import CheckReport
from .spectral import replay_spectral
from .stability import replay_line_restriction, replay_section, replay_stability
from .weighted import replay_weighted


def _replay_geometry(w: dict) -> bool:
    return check_neighborhood_geometry(Graph.from_json(w["graph"]), w["r"]).violated


REPLAYERS = {
    "induced-monotonicity": replay_monotonicity,
    "spanning-monotonicity": replay_monotonicity,
    "b-independence-bound": lambda w: replay_extremal("b-independence-bound", w),
    "b-girth-bound": lambda w: replay_extremal("b-girth-bound", w),
    "neighborhood-geometry": _replay_geometry,
    "section-real-rootedness": replay_section,
    "line-restriction": replay_line_restriction,
    "chordal-stability": replay_stability,
    "triangle-free-stability": replay_stability,
}
for _claim in ("common-neighborhood-bound", "coefficient-bound", "root-bound"):
    REPLAYERS[_claim] = lambda w, c=_claim: replay_spectral(c, w)
for _claim in ("weight-monotonicity", "weighted-root-monotonicity", "homomorphism", "clique-lift",
               "hom-monotonicity"):
    REPLAYERS[_claim] = lambda w, c=_claim: replay_weighted(c, w)


def replay(report) -> bool:
    """True iff the report is Violated and its witness reproduces the violation."""
    if isinstance(report, dict):
        report = CheckReport.from_json(report)
    if not report.violated:
        return False
    fn = REPLAYERS.get(report.claim)
    if fn is None:
        raise KeyError(f"no replayer for claim {report.claim!r}")
    return bool(fn(report.witness))
