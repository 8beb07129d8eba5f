"""Brute-force reference solver and plan comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .ledger import simulate_policy
from .model import CapacityError, Decision, Policy, Scenario, decision_order, format_money
from .rates import RateTable, build_rate_table
from .solver import OptimalPlan, SearchStats

MAX_POLICIES = 2**24


def brute_force_solve(scenario: Scenario, max_policies: int = MAX_POLICIES,
                      table: Optional[RateTable] = None) -> OptimalPlan:
    """Simulate every accept/reject assignment and keep the first best one.

    No budget pruning happens here: budget violations surface through the
    simulator like any other infeasibility.
    """
    if table is None:
        table = build_rate_table(scenario)
    total = 2 ** len(scenario.offers)
    if total > max_policies:
        raise CapacityError(f"{total} policies exceed the oracle bound {max_policies}")

    per_period = []
    for i in range(1, scenario.periods + 1):
        ordered = decision_order(scenario.offers_in(i))
        per_period.append([Decision.from_bits(i, ordered, bits)
                           for bits in itertools.product((0, 1), repeat=len(ordered))])

    stats = SearchStats()
    best = None
    for decisions in itertools.product(*per_period):
        stats.policies_evaluated += 1
        policy = Policy(decisions)
        traj = simulate_policy(scenario, policy, table)
        if traj.feasible and (best is None or traj.profit > best[0]):
            best = traj.profit, policy, traj
    stats.nodes_expanded = stats.policies_evaluated
    assert best is not None, "reject-all is always feasible"
    return OptimalPlan(best[0], best[1], best[2], stats, scenario.currency_exponent)


@dataclass(frozen=True)
class Comparison:
    values_equal: bool
    policies_equal: bool
    value_delta: int
    first_divergence: Optional[int] = None
    exponent: int = 2

    @property
    def tie_anomaly(self) -> bool:
        return self.values_equal and not self.policies_equal

    @property
    def equal(self) -> bool:
        return self.values_equal and self.policies_equal

    def __str__(self) -> str:
        if self.equal:
            return "equal"
        if self.tie_anomaly:
            return f"tie anomaly: equal values, policies diverge at period {self.first_divergence}"
        return f"value mismatch, Δ = {format_money(self.value_delta, self.exponent)}"


def compare_plans(a: OptimalPlan, b: OptimalPlan) -> Comparison:
    first = None
    for da, db in itertools.zip_longest(a.policy.decisions, b.policy.decisions):
        if da != db:
            first = (da or db).period
            break
    return Comparison(a.value == b.value, first is None, a.value - b.value, first,
                      a.currency_exponent)
