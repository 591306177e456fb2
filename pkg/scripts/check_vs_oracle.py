#!/usr/bin/env python3
"""Cross-check the solver against exhaustive enumeration on seeded corpora.

Generates small instances across all families, solves each with both the
table-filling solver and the brute-force oracle, and reports any weight
mismatch or invalid witness schedule.  Exits 1 on the first failing corpus.

Example:
    python3 scripts/check_vs_oracle.py --count 500 --max-n 8 --seed 81000
"""

from __future__ import annotations

import argparse
import sys

from schedmax.dp import solve
from schedmax.gen import FAMILIES, GenParams, generate
from schedmax.model import parse_instance, validate
from schedmax.oracle import oracle_solve


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--min-n", type=int, default=1)
    parser.add_argument("--seed", type=int, default=81000)
    parser.add_argument(
        "--ps", default="1,2,3,5", help="comma-separated job lengths to cycle"
    )
    args = parser.parse_args(argv)

    ps = [int(part) for part in args.ps.split(",") if part.strip()]
    span = args.max_n - args.min_n + 1
    if args.count < 1 or span < 1 or not ps:
        print("error: nothing to do", file=sys.stderr)
        return 2

    mismatches = 0
    invalid = 0
    for idx in range(args.count):
        family = FAMILIES[idx % len(FAMILIES)]
        p = ps[(idx // len(FAMILIES)) % len(ps)]
        n = args.min_n + (idx // (len(FAMILIES) * len(ps))) % span
        params = GenParams(
            n=n,
            p=p,
            horizon=2 * n + 2,
            max_window=p + 4,
            max_weight=9,
            seed=args.seed + 17 * idx,
            family=family,
        )
        inst = parse_instance(generate(params))
        got = solve(inst)
        want = oracle_solve(inst)
        tag = f"{family}/p{p}/n{n}/seed{params.seed}"
        if got.weight != want.weight:
            mismatches += 1
            print(f"MISMATCH {tag}: solver {got.weight}, oracle {want.weight}")
        report = validate(inst, got)
        if not report.ok:
            invalid += 1
            print(f"INVALID {tag}: {report.violations[0]}")

    print(
        f"checked {args.count} instances "
        f"(n {args.min_n}..{args.max_n}, p {ps}, families {', '.join(FAMILIES)}): "
        f"{mismatches} mismatches, {invalid} invalid schedules"
    )
    return 1 if mismatches or invalid else 0


if __name__ == "__main__":
    sys.exit(main())
