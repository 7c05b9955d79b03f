"""``bclique`` command line: compute, analyse and check, with JSON reports on stdout.

Exit codes: 0 success with no violations, 2 a checker reported a violation,
1 input or resource error.
"""

from __future__ import annotations

import argparse
import collections
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .analysis import (
    DEFAULT_Y_GRID,
    check_b_girth_bound,
    check_b_independence_bound,
    check_induced_monotonicity,
    check_spanning_monotonicity,
    deletion_chain_reports,
    zeta,
)
from .cliques import (
    STRATEGIES,
    BudgetExceeded,
    cbpoly_bruteforce,
    cbpoly_peo,
    classical_clique_poly,
    peo_steps,
    weighted_cbpoly,
)
from .corpus import CorpusConfig, build_corpus
from .graph import GraphError, check_neighborhood_geometry, extremal_params, is_chordal, parse_graph
from .report import CheckReport, Verdict, frac_str, parse_fraction
from .spectral import eigenvalues, spectral_reports
from .stability import DEFAULT_TRIALS, check_main_stability_theorem, triangle_free_stability_check
from .weighted import (
    check_clique_lift,
    check_hom_monotonicity,
    check_weight_monotonicity,
    check_weighted_root_monotonicity,
    parse_hom_file,
    unit_weights,
    validate_homomorphism,
)

CHECK_GROUPS = ("monotonicity", "bounds", "stability", "spectral", "hom", "all")
CORPUS_SUITES = ("strategies", "specialization", "monotonicity", "bounds", "stability", "all")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"bclique: error: {message}", file=sys.stderr)
        raise SystemExit(1)


class _Inputs:
    """Reads input files and hashes them in read order."""

    def __init__(self):
        self.hash = hashlib.sha256()
        self.used = False

    def read(self, path: str) -> str:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from None
        self.hash.update(data)
        self.used = True
        return data.decode("utf-8")

    def graph(self, path: str):
        try:
            return parse_graph(self.read(path))
        except GraphError as exc:
            raise CliError(f"{path}: {exc}") from None

    def digest(self) -> Optional[str]:
        return self.hash.hexdigest() if self.used else None


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bclique", description="B-restricted clique polynomials and checks of their properties.")
    p.add_argument("--version", action="version", version=f"bclique {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="compute C_B(G;x,y)")
    c.add_argument("--graph", required=True)
    c.add_argument("--strategy", choices=("brute", "vertex", "edge", "peo", "all"), default="brute")

    z = sub.add_parser("zeta", help="largest negative root of the y-section")
    z.add_argument("--graph", required=True)
    z.add_argument("--y", type=_rational, required=True, help="rational p/q, y >= 0")
    z.add_argument("--width", type=_rational, default=None, help="isolating interval width (p/q)")

    b = sub.add_parser("bounds", help="alpha_B, g_B and their zeta bounds")
    b.add_argument("--graph", required=True)

    k = sub.add_parser("check", help="run theorem checkers")
    k.add_argument("group", choices=CHECK_GROUPS)
    k.add_argument("--graph")
    k.add_argument("--map", help="homomorphism file (g/h/m lines)")
    k.add_argument("--r", type=int, default=1)
    k.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--y-grid", type=_rational_list, default=None, help="comma-separated rationals")

    s = sub.add_parser("spectrum", help="adjacency spectrum of a regular graph")
    s.add_argument("--graph", required=True)

    r = sub.add_parser("corpus", help="run the seeded randomized suite")
    r.add_argument("--suite", choices=CORPUS_SUITES, default="all")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--limit", type=int, default=None, help="only the first N corpus instances")
    r.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    return p


def _params(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if isinstance(value, Fraction):
            value = frac_str(value)
        elif isinstance(value, tuple):
            value = [frac_str(v) for v in value]
        out[key] = value
    return out


def _envelope(args, inputs: _Inputs, reports: list[CheckReport], result=None) -> dict:
    env = {"version": __version__, "input_hash": inputs.digest(), "params": _params(args)}
    if result is not None:
        env["result"] = result
    env["reports"] = [r.to_json() for r in reports]
    return env


def cmd_compute(args, inputs):
    gf = inputs.graph(args.graph)
    g, B = gf.graph, gf.B
    reports = []
    peo = is_chordal(g)
    if args.strategy == "peo":
        if peo is None:
            raise CliError("graph is not chordal; the peo strategy needs a perfect elimination ordering")
        P = cbpoly_peo(g, B, peo)
    elif args.strategy == "all":
        polys = {name: fn(g, B) for name, fn in STRATEGIES.items()}
        notes = []
        if peo is not None:
            polys["peo"] = cbpoly_peo(g, B, peo)
        else:
            notes.append("graph is not chordal; peo strategy skipped")
        P = polys["brute"]
        bad = sorted(name for name, q in polys.items() if q != P)
        if bad:
            witness = {"graph": g.to_json(), "B": g.label_set(B),
                       "polynomials": {name: q.to_json() for name, q in polys.items()}}
            reports.append(CheckReport("strategy-agreement", Verdict.VIOLATED, witness, notes,
                                       {"disagreeing": bad}))
        else:
            reports.append(CheckReport("strategy-agreement", Verdict.HOLDS, None, notes,
                                       {"strategies": sorted(polys)}))
    else:
        P = STRATEGIES[args.strategy](g, B)
    result = {"graph": g.to_json(), "B": g.label_set(B), "polynomial": P.to_json(), "pretty": P.pretty()}
    if peo is not None and args.strategy in ("peo", "all"):
        result["peo"] = [g.labels[v] for v in peo.order]
        result["peo_steps"] = [q.to_json() for q in peo_steps(g, B, peo)]
    if gf.weights is not None:
        result["weighted_polynomial"] = weighted_cbpoly(g, B, gf.weights).to_json()
    return reports, result


def cmd_zeta(args, inputs):
    gf = inputs.graph(args.graph)
    if args.y < 0:
        raise CliError("y must be nonnegative")
    if args.width is not None and args.width <= 0:
        raise CliError("width must be positive")
    kwargs = {} if args.width is None else {"width": args.width}
    ra = zeta(gf.graph, gf.B, args.y, **kwargs)
    section = cbpoly_bruteforce(gf.graph, gf.B).section_at_y(args.y)
    out = {"y": frac_str(args.y), "section": section.to_json(), **ra.to_json(), "zeta_float": ra.zeta_float()}
    out["square_free_section"] = out.pop("polynomial")
    return [], out


def cmd_bounds(args, inputs):
    gf = inputs.graph(args.graph)
    g, B = gf.graph, gf.B
    params = extremal_params(g, B)
    ra = zeta(g, B, 1)
    result = {
        "alphaB": params.alphaB,
        "gB": params.gB,
        "zeta_at_1": ra.zeta.to_json() if ra.zeta else "-inf",
    }
    return [check_b_independence_bound(g, B), check_b_girth_bound(g, B)], result


def _monotonicity_group(g, B, weights, grid) -> list[CheckReport]:
    reports = [check_induced_monotonicity(g, B, v, grid) for v in range(g.n)]
    reports += [check_spanning_monotonicity(g, B, e, grid) for e in g.edges()]
    if weights is not None:
        unit = unit_weights(B)
        reports.append(check_weight_monotonicity(g, B, unit, weights))
        reports.append(check_weighted_root_monotonicity(g, B, unit, weights))
    return reports


def _stability_group(g, B, r, trials, seed) -> list[CheckReport]:
    return [
        check_neighborhood_geometry(g, r),
        check_main_stability_theorem(g, B, r, trials, seed),
        triangle_free_stability_check(g, B, trials, seed),
    ]


def _hom_group(path, inputs) -> list[CheckReport]:
    text = inputs.read(path)
    try:
        gfile, _, f = parse_hom_file(text, os.path.dirname(path) or ".")
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None
    w_G = gfile.weights
    return [
        validate_homomorphism(f),
        check_clique_lift(f),
        check_hom_monotonicity(f, gfile.B, w_G),
    ]


def cmd_check(args, inputs):
    group = args.group
    if group == "hom" and not args.map:
        raise CliError("check hom needs --map <file>")
    if group != "hom" and not args.graph:
        raise CliError(f"check {group} needs --graph <file>")
    if args.r < 1:
        raise CliError("--r must be a positive integer")
    if args.trials < 1:
        raise CliError("--trials must be positive")
    reports: list[CheckReport] = []
    if args.graph:
        gf = inputs.graph(args.graph)
        g, B = gf.graph, gf.B
        grid = args.y_grid or DEFAULT_Y_GRID
        if group in ("monotonicity", "all"):
            reports += _monotonicity_group(g, B, gf.weights, grid)
        if group in ("bounds", "all"):
            reports += [check_b_independence_bound(g, B), check_b_girth_bound(g, B)]
        if group in ("stability", "all"):
            reports += _stability_group(g, B, args.r, args.trials, args.seed)
        if group in ("spectral", "all"):
            reports += spectral_reports(g, B)
    if group in ("hom", "all") and args.map:
        reports += _hom_group(args.map, inputs)
    return reports, None


def cmd_spectrum(args, inputs):
    gf = inputs.graph(args.graph)
    try:
        profile = eigenvalues(gf.graph)
    except GraphError as exc:
        raise CliError(str(exc)) from None
    return [], profile.to_json()


def corpus_reports(suite: str, seed: int, limit: Optional[int] = None, trials: int = DEFAULT_TRIALS):
    """Yield (instance name, report) pairs for the seeded corpus."""
    instances = build_corpus(CorpusConfig(seed=seed))
    if limit is not None:
        instances = instances[:limit]
    for k, ins in enumerate(instances):
        g, B = ins.graph, ins.B
        if suite in ("strategies", "all"):
            P = cbpoly_bruteforce(g, B)
            polys = {name: fn(g, B) for name, fn in STRATEGIES.items()}
            peo = is_chordal(g)
            if peo is not None:
                polys["peo"] = cbpoly_peo(g, B, peo)
            bad = sorted(name for name, q in polys.items() if q != P)
            if bad:
                yield ins.name, CheckReport("strategy-agreement", Verdict.VIOLATED,
                                            {"graph": g.to_json(), "B": g.label_set(B)}, [], {"disagreeing": bad})
            else:
                yield ins.name, CheckReport("strategy-agreement", Verdict.HOLDS)
        if suite in ("specialization", "all"):
            yield ins.name, specialization_report(g)
        if suite in ("monotonicity", "all"):
            for rep in deletion_chain_reports(g, B, seed=seed + k):
                yield ins.name, rep
        if suite in ("bounds", "all"):
            yield ins.name, check_b_independence_bound(g, B)
            yield ins.name, check_b_girth_bound(g, B)
        if suite in ("stability", "all"):
            yield ins.name, check_main_stability_theorem(g, B, 1, trials, seed)


def specialization_report(g) -> CheckReport:
    """C_V(G;x,y) = C(G;xy) and C_empty(G;x,y) = C(G;x) against the classical count."""
    classical = classical_clique_poly(g)
    full = cbpoly_bruteforce(g, range(g.n))
    none = cbpoly_bruteforce(g, ())
    want_full = {(i, i): c for i, c in enumerate(classical) if c}
    want_none = {(i, 0): c for i, c in enumerate(classical) if c}
    ok = dict(full.terms) == want_full and dict(none.terms) == want_none
    if ok:
        return CheckReport("specialization", Verdict.HOLDS)
    witness = {"graph": g.to_json(), "classical": classical, "C_V": full.to_json(), "C_empty": none.to_json()}
    return CheckReport("specialization", Verdict.VIOLATED, witness)


def cmd_corpus(args, inputs):
    if args.limit is not None and args.limit < 0:
        raise CliError("--limit must be nonnegative")
    table: dict = collections.defaultdict(collections.Counter)
    flagged = []
    for name, rep in corpus_reports(args.suite, args.seed, args.limit, args.trials):
        table[rep.claim][rep.verdict.value] += 1
        if rep.verdict in (Verdict.VIOLATED, Verdict.UNRESOLVED):
            rep.details = {**rep.details, "instance": name}
            flagged.append(rep)
    result = {"verdict_table": {c: dict(sorted(v.items())) for c, v in sorted(table.items())}}
    return flagged, result


COMMANDS = {
    "compute": cmd_compute,
    "zeta": cmd_zeta,
    "bounds": cmd_bounds,
    "check": cmd_check,
    "spectrum": cmd_spectrum,
    "corpus": cmd_corpus,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    inputs = _Inputs()
    try:
        reports, result = COMMANDS[args.command](args, inputs)
    except CliError as exc:
        print(f"bclique: error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"bclique: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except (GraphError, ValueError) as exc:
        print(f"bclique: error: {exc}", file=sys.stderr)
        return 1
    # serialize fully before writing so a failure never leaves partial JSON
    text = json.dumps(_envelope(args, inputs, reports, result), indent=2)
    stdout.write(text + "\n")
    violated = collections.Counter(r.claim for r in reports if r.violated)
    for claim, count in sorted(violated.items()):
        print(f"violated: {claim} ({count})", file=sys.stderr)
    return 2 if violated else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
