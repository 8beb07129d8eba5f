"""Sweep seeded instances, solve each with DP and brute force, and tabulate
agreement, values and timings as CSV on stdout.

    python scripts/oracle_sweep.py --count 100 --max-bits 12
"""

import argparse
import csv
import sys
import time

from bankdp import GeneratorConfig, brute_force_solve, compare_plans, generate_scenario, solve


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--max-bits", type=int, default=12, help="cap on total offers per instance")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [(n, L, D) for n in (1, 2, 3) for L in range(4) for D in range(4)
             if n * (L + D) <= args.max_bits]
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["seed", "periods", "loans", "deposits", "value_minor", "agree",
                  "dp_nodes", "dp_memo_hits", "dp_seconds", "oracle_policies", "oracle_seconds"])
    mismatches = 0
    for k in range(args.count):
        n, L, D = sizes[k % len(sizes)]
        cfg = GeneratorConfig(periods=n, loans_per_period=L, deposits_per_period=D, seed=args.seed + k)
        sc = generate_scenario(cfg)
        t0 = time.perf_counter()
        dp = solve(sc)
        t1 = time.perf_counter()
        bf = brute_force_solve(sc)
        t2 = time.perf_counter()
        agree = compare_plans(dp, bf).equal
        mismatches += not agree
        out.writerow([cfg.seed, n, L, D, dp.value, int(agree), dp.stats.nodes_expanded,
                      dp.stats.memo_hits, f"{t1 - t0:.4f}", bf.stats.policies_evaluated, f"{t2 - t1:.4f}"])
    print(f"{args.count} instances, {mismatches} mismatches", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
