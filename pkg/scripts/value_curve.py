"""Optimal profit as a function of starting capital for one generated
instance, written as CSV (capital_minor,value_minor) for plotting.

    python scripts/value_curve.py --seed 3 --periods 3 --points 25 > curve.csv
"""

import argparse
import sys

from bankdp import GeneratorConfig, generate_scenario, value_function


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=3)
    parser.add_argument("--periods", type=int, default=3)
    parser.add_argument("--loans", type=int, default=3)
    parser.add_argument("--deposits", type=int, default=2)
    parser.add_argument("--min-capital", type=int, default=1000)
    parser.add_argument("--max-capital", type=int, default=60000)
    parser.add_argument("--points", type=int, default=25)
    args = parser.parse_args()

    sc = generate_scenario(GeneratorConfig(periods=args.periods, loans_per_period=args.loans,
                                           deposits_per_period=args.deposits, seed=args.seed))
    step = (args.max_capital - args.min_capital) / max(args.points - 1, 1)
    grid = sorted({round(args.min_capital + k * step) for k in range(args.points)})
    print("capital_minor,value_minor")
    for w0, value in value_function(sc, grid):
        print(f"{w0},{value}")


if __name__ == "__main__":
    sys.exit(main())
