"""Exact dynamic-programming selection of loan and deposit offers for a bank."""

from .ledger import BankState, Trajectory, accrue_payout, enumerate_decisions, simulate_policy, step
from .model import (
    CapacityError,
    Decision,
    Offer,
    Policy,
    RateParams,
    Scenario,
    ScenarioError,
    Side,
    validate_scenario,
)
from .oracle import brute_force_solve, compare_plans
from .rates import build_rate_table, coefficient_sequences, demand_totals, deposit_rate, lending_rate
from .scenario_io import GeneratorConfig, dump_scenario, generate_scenario, parse_scenario, write_report
from .solver import OptimalPlan, solve, value_function

__all__ = [
    "BankState", "CapacityError", "Decision", "GeneratorConfig", "Offer", "OptimalPlan", "Policy",
    "RateParams", "Scenario", "ScenarioError", "Side", "Trajectory", "accrue_payout",
    "brute_force_solve", "build_rate_table", "coefficient_sequences", "compare_plans",
    "demand_totals", "deposit_rate", "dump_scenario", "enumerate_decisions", "generate_scenario",
    "lending_rate", "parse_scenario", "simulate_policy", "solve", "step", "validate_scenario",
    "value_function", "write_report",
]
