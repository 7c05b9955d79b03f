"""Run the seeded corpus suites and print a verdict table per claim.

    python3 scripts/run_corpus.py --suite all --seed 0 --out corpus.json
"""

import argparse
import collections
import json
import time

from bclique.cli import CORPUS_SUITES, corpus_reports


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=CORPUS_SUITES, default="all")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--limit", type=int, default=None)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--out", help="write flagged reports and the table as JSON")
    args = ap.parse_args()

    start = time.perf_counter()
    table = collections.defaultdict(collections.Counter)
    flagged = []
    for name, rep in corpus_reports(args.suite, args.seed, args.limit, args.trials):
        table[rep.claim][rep.verdict.value] += 1
        if rep.verdict.value in ("violated", "unresolved"):
            flagged.append({"instance": name, **rep.to_json()})
    elapsed = time.perf_counter() - start

    verdicts = sorted({v for counts in table.values() for v in counts})
    print(f"{'claim':28s}" + "".join(f"{v:>24s}" for v in verdicts))
    for claim in sorted(table):
        print(f"{claim:28s}" + "".join(f"{table[claim][v]:>24d}" for v in verdicts))
    print(f"\n{len(flagged)} flagged reports, {elapsed:.1f}s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"table": {c: dict(v) for c, v in table.items()}, "flagged": flagged}, fh, indent=2)


if __name__ == "__main__":
    main()
