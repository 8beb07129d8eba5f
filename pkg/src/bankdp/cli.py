"""bankdp command line.

Exit codes: 0 success, 1 invalid input or infeasible plan, 2 usage error,
3 capacity bound exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .ledger import simulate_policy
from .model import CapacityError, RateParams, Scenario, format_money, validate_scenario
from .oracle import brute_force_solve, compare_plans
from .rates import build_rate_table
from .scenario_io import (
    FormatError,
    GeneratorConfig,
    dump_scenario,
    generate_scenario,
    parse_plan,
    parse_scenario,
    write_report,
)
from .solver import MAX_NODES, solve, value_function


class InputError(Exception):
    pass


def _emit(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _load(path: str) -> Scenario:
    try:
        scenario = parse_scenario(Path(path).read_bytes())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    problems = validate_scenario(scenario)
    if problems:
        raise InputError(f"{path}: invalid scenario\n  " + "\n  ".join(problems))
    return scenario


def _money(value: int, exponent: int) -> str:
    return f"{value} ({format_money(value, exponent)})"


def _max_nodes(args: argparse.Namespace) -> int:
    if args.max_nodes is not None:
        return args.max_nodes
    env = os.environ.get("BANKDP_MAX_NODES")
    return int(env) if env else MAX_NODES


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        scenario = parse_scenario(Path(args.scenario).read_bytes())
    except FormatError as exc:
        print(f"{args.scenario}: {exc}", file=sys.stderr)
        return 1
    problems = validate_scenario(scenario)
    for p in problems:
        print(p)
    if problems:
        return 1
    print(f"ok: {scenario.periods} periods, {len(scenario.offers)} offers")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        periods=args.periods,
        loans_per_period=args.loans,
        deposits_per_period=args.deposits,
        principal_range=(args.principal_min, args.principal_max),
        term_range=(args.term_min, args.term_max),
        rate_params=RateParams(args.a0, args.c0, args.b1, args.b2, args.s),
        initial_capital=args.capital,
        seed=args.seed,
    )
    try:
        scenario = generate_scenario(config)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(dump_scenario(scenario), args.out)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    if args.method == "oracle":
        plan = brute_force_solve(scenario)
    else:
        plan = solve(scenario, memo=not args.no_memo, max_nodes=_max_nodes(args))
    print(f"value: {_money(plan.value, scenario.currency_exponent)}", file=sys.stderr)
    _emit(write_report(plan, "json"), args.out)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    try:
        plan = parse_plan(Path(args.plan).read_bytes(), scenario)
        traj = simulate_policy(scenario, plan.policy, build_rate_table(scenario))
    except (OSError, FormatError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.plan}: {exc}") from None
    exp = scenario.currency_exponent
    for r in traj.records:
        print(f"period {r.period}: cash_end {_money(r.cash_end, exp)} "
              f"profit_cum {_money(r.profit_cum, exp)} balance {_money(r.balance, exp)} "
              f"accepted [{';'.join(r.accepted)}]")
    if not traj.feasible:
        period, constraint = traj.violation
        print(f"infeasible: {constraint} violated at period {period}")
        return 1
    print(f"feasible: profit {_money(traj.profit, exp)}")
    if traj.profit != plan.value:
        print(f"plan states value {plan.value}, simulation gives {traj.profit}", file=sys.stderr)
        return 1
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    dp = solve(scenario, max_nodes=_max_nodes(args))
    bf = brute_force_solve(scenario)
    exp = scenario.currency_exponent
    print(f"dp: {_money(dp.value, exp)}")
    print(f"oracle: {_money(bf.value, exp)}")
    report = compare_plans(dp, bf)
    print(report)
    return 0 if report.equal else 1


def cmd_report(args: argparse.Namespace) -> int:
    try:
        plan = parse_plan(Path(args.plan).read_bytes())
    except (OSError, FormatError, KeyError, TypeError) as exc:
        raise InputError(f"{args.plan}: {exc}") from None
    _emit(write_report(plan, args.format), args.out)
    return 0


def cmd_values(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    try:
        capitals = [int(x) for x in args.capitals.split(",") if x.strip()]
    except ValueError:
        raise InputError("--capitals must be comma-separated integers (minor units)") from None
    if not capitals or min(capitals) <= 0:
        raise InputError("--capitals must list positive amounts")
    exp = scenario.currency_exponent
    print("capital_minor,value_minor,capital,value")
    for w0, value in value_function(scenario, capitals, max_nodes=_max_nodes(args)):
        print(f"{w0},{value},{format_money(w0, exp)},{format_money(value, exp)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bankdp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="generate a seeded scenario")
    p.add_argument("--periods", type=int, required=True)
    p.add_argument("--loans", type=int, required=True)
    p.add_argument("--deposits", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--principal-min", type=int, default=1000)
    p.add_argument("--principal-max", type=int, default=20000)
    p.add_argument("--term-min", type=int, default=1)
    p.add_argument("--term-max", type=int, default=3)
    p.add_argument("--capital", type=int, default=10000, help="initial capital, minor units")
    p.add_argument("--a0", type=float, default=5.0)
    p.add_argument("--c0", type=float, default=3.0)
    p.add_argument("--b1", type=int, default=100000, help="volume scale, minor units")
    p.add_argument("--b2", type=float, default=4.0, help="term scale, periods")
    p.add_argument("--s", type=int, default=100000, help="demand sensitivity, minor units")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="compute the optimal plan")
    p.add_argument("scenario")
    p.add_argument("--method", choices=("dp", "oracle"), default="dp")
    p.add_argument("--out")
    p.add_argument("--no-memo", action="store_true")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="replay a plan's policy through the ledger")
    p.add_argument("scenario")
    p.add_argument("--plan", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="solve with dp and oracle and compare")
    p.add_argument("scenario")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="render a plan file as csv or json")
    p.add_argument("plan")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("values", help="optimal value over a grid of initial capitals")
    p.add_argument("--scenario", required=True)
    p.add_argument("--capitals", required=True, help="comma-separated minor-unit amounts")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_values)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
