"""Search for a semiregular quandle with a non-semiregular quotient and store it.

Runs the census route and the central-extension route; each witness found is
written to src/leftq/data as nonclosure_<route>.lq.
"""
import argparse
import time
from pathlib import Path

from leftq.census import mine_nonclosure_witness
from leftq.table import to_lq

OUT = Path(__file__).resolve().parents[1] / "src" / "leftq" / "data"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=12)
    ap.add_argument("--per-family", type=int, default=5000)
    ap.add_argument("--dry-run", action="store_true")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    found = mine_nonclosure_witness(args.max_order, per_family=args.per_family)
    for w in found:
        comment = (
            f"semiregular quandle of order {w.table.n} with a non-semiregular quotient\n"
            f"route: {w.route} ({w.detail})\n"
            f"quotient congruence: {w.alpha}"
        )
        print(to_lq(w.table, comment))
        if not args.dry_run:
            (OUT / f"nonclosure_{w.route}.lq").write_text(to_lq(w.table, comment))
    print(f"{len(found)} witness(es) in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
