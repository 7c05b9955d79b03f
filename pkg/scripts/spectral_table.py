"""Spectral bound tables for a fixed suite of regular graphs, B = V."""

import argparse
from fractions import Fraction

from bclique.graph import complete_bipartite, complete_graph, cycle_graph, petersen_graph
from bclique.spectral import (
    check_coefficient_bounds,
    check_common_neighborhood_bound,
    check_root_bound,
    eigenvalues,
)

SUITE = {
    "K4": complete_graph(4),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "K33": complete_bipartite(3, 3),
    "Petersen": petersen_graph(),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--y", default="1/2,1,2", help="comma-separated y values for the root bound")
    args = ap.parse_args()
    ys = [Fraction(t) for t in args.y.split(",")]

    print(f"{'graph':10s}{'n':>4s}{'d':>4s}{'lambda':>12s}{'nbhd':>10s}{'coeff':>10s}{'root':>10s}")
    for name, g in SUITE.items():
        prof = eigenvalues(g)
        V = range(g.n)
        nb = check_common_neighborhood_bound(g, V, prof)
        co = check_coefficient_bounds(g, V, prof)
        rb = check_root_bound(g, V, ys)
        print(f"{name:10s}{g.n:4d}{prof.d:4d}{float(prof.lam):12.6f}"
              f"{nb.verdict.value:>10s}{co.verdict.value:>10s}{rb.verdict.value:>10s}")
        for row in rb.details.get("rows", []):
            z = row.get("zeta_float")
            z = "-inf" if z is None else f"{z:.6f}"
            print(f"{'':10s}  y={row['y']:>5s}  D={row['D']}  zeta={z}  -1/D={-1 / row['D']:.6f}  {row['verdict']}")


if __name__ == "__main__":
    main()
