#!/usr/bin/env python3
"""Sweep the identity over a grid of (n, r) and print a timing table.

Example:
    python scripts/sweep_report.py --n-max 20 --r-max 3 --shards 2
"""

import argparse
import sys

from menon.group_action import BudgetExceededError, DEFAULT_BUDGET, group_size
from menon.identity import verify_star


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--r-max", type=int, default=3)
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    args = ap.parse_args()

    print(f"{'n':>4} {'r':>2} {'|G|':>12} {'lhs = rhs':>16} {'elapsed':>9} {'elem/s':>12}")
    failures = 0
    for r in range(1, args.r_max + 1):
        for n in range(1, args.n_max + 1):
            size = group_size(n, r)
            try:
                rep = verify_star(n, r, budget=args.budget, shards=args.shards)
            except BudgetExceededError as exc:
                print(f"{n:>4} {r:>2} {size:>12} {'refused':>16} {'-':>9} {'-':>12}  ({exc})")
                continue
            mark = "" if rep.matched else "  MISMATCH"
            failures += not rep.matched
            rate = size / rep.elapsed if rep.elapsed > 0 else float("inf")
            print(
                f"{n:>4} {r:>2} {size:>12} {rep.lhs:>16} {rep.elapsed:>8.3f}s {rate:>12.0f}{mark}"
            )
    if failures:
        print(f"{failures} mismatching sweeps", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
