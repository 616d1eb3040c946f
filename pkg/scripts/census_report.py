"""Tabulate property counts over a census.

Example: ``python3 scripts/census_report.py 4 --idempotent``.  Counts are over
isomorphism classes; the Mal'tsev column is searched only for nilpotent
instances (other columns never need it).
"""
import argparse
import collections
import time

from leftq import census, galois
from leftq.commutator import center_congruence, central_series
from leftq.maltsev import is_connected, is_superconnected, maltsev_search
from leftq.table import classify


def profile(Q, budget):
    c = classify(Q)
    row = {
        "quandle": c.quandle,
        "latin": c.latin,
        "faithful": c.faithful,
        "connected": is_connected(Q),
        "superconnected": is_superconnected(Q),
        "semiregular": galois.is_semiregular(Q),
        "abelian": center_congruence(Q).is_top(),
        "nilpotent": central_series(Q).nilpotent,
    }
    row["maltsev"] = maltsev_search(Q, budget).status if row["nilpotent"] else "-"
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("order", type=int)
    ap.add_argument("--idempotent", action="store_true")
    ap.add_argument("--budget", type=int, default=20_000)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    classes = census.isomorphism_classes(args.order, args.idempotent)
    counts = collections.Counter()
    for Q, _ in classes:
        for k, v in profile(Q, args.budget).items():
            counts[k, v] += 1
    print(f"order {args.order}{' idempotent' if args.idempotent else ''}: {len(classes)} classes")
    for (k, v), c in sorted(counts.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        print(f"  {k:15s} {str(v):9s} {c}")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
