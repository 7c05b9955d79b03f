"""Survey the chordal stability claim on every small connected chordal graph.

For each labelled graph on up to --max-n vertices that is connected, chordal
and K4-free, and for every B, run the refutation battery and report the
smallest refuted instances together with the refuting line.
"""

import argparse
import collections

from bclique.corpus import all_labelled_graphs
from bclique.stability import check_main_stability_theorem, stability_hypotheses


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=5, help="how many refuted instances to print")
    args = ap.parse_args()

    counts = collections.Counter()
    shown = 0
    for n in range(1, args.max_n + 1):
        seen = set()
        for g in all_labelled_graphs(n):
            h = stability_hypotheses(g, 1)
            if not (h["r_connected"] and h["kr3_free"] and h["chordal"]):
                continue
            key = tuple(g.edges())
            if key in seen:
                continue
            seen.add(key)
            for mask in range(1 << n):
                B = [v for v in range(n) if mask >> v & 1]
                rep = check_main_stability_theorem(g, B, 1, args.trials, args.seed)
                counts[n, rep.verdict.value] += 1
                if rep.violated and shown < args.show:
                    shown += 1
                    w = rep.witness
                    print(f"n={n} edges={w['graph']['edges']} "
                          f"B={w['B']}: {w.get('source', 'line')} "
                          f"a={w.get('a')} b={w.get('b')} c={w.get('c')} d={w.get('d')}")
    print()
    for n in range(1, args.max_n + 1):
        row = {v: c for (m, v), c in counts.items() if m == n}
        print(f"n={n}: {dict(sorted(row.items()))}")


if __name__ == "__main__":
    main()
