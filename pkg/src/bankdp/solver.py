"""Exact optimal selection policy by memoized depth-first dynamic programming.

The value of a state is the best profit still obtainable from it:

    f(state) = max over admissible decisions d of
               [profit realized in this period under d + f(step(state, d))]

with f = 0 once the horizon is passed. Cash alone is not a sufficient state
when contracts span several periods, so states are keyed on the period, the
cash and a canonical digest of the outstanding contracts.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Hashable, Optional

from .ledger import (
    MAX_BRANCH,
    BankState,
    ConstraintViolation,
    Trajectory,
    enumerate_decisions,
    simulate_policy,
    step,
)
from .model import CapacityError, Decision, Policy, Scenario
from .rates import RateTable, build_rate_table

MAX_NODES = 10**7


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    memo_hits: int = 0
    states_stored: int = 0
    policies_evaluated: int = 0


@dataclass(frozen=True)
class OptimalPlan:
    value: int
    policy: Policy
    trajectory: Trajectory
    stats: SearchStats
    currency_exponent: int = 2


def state_key(state: BankState) -> Hashable:
    digest = tuple((e.maturity_period, e.side.value, e.principal, e.payout)
                   for e in state.outstanding)
    return state.next_period, state.cash, digest


def capital_key(state: BankState) -> Hashable:
    """Period and cash only; sound only when every term is one period."""
    return state.next_period, state.cash


_KEYS = {"ledger": state_key, "capital": capital_key}


def solve(scenario: Scenario, *, memo: bool = True, key: str = "ledger",
          max_nodes: int = MAX_NODES, max_branch: int = MAX_BRANCH,
          table: Optional[RateTable] = None) -> OptimalPlan:
    """Maximize final profit over all feasible policies.

    Among optimal policies the one whose concatenated accept-bit vector
    (period 1 first; deposits before loans inside a period) is
    lexicographically smallest is returned.
    """
    if table is None:
        table = build_rate_table(scenario)
    keyfn = _KEYS[key]
    n = scenario.periods
    stats = SearchStats()
    cache: dict = {}

    def best(state: BankState) -> Optional[tuple[int, tuple[Decision, ...]]]:
        i = state.next_period
        if i > n:
            return 0, ()
        if memo:
            k = keyfn(state)
            if k in cache:
                stats.memo_hits += 1
                return cache[k]
        offers_i = scenario.offers_in(i)
        stats.nodes_expanded += 1
        if stats.nodes_expanded > max_nodes:
            raise CapacityError(f"node bound {max_nodes} exceeded at period {i} "
                                f"({len(offers_i)} offers)")
        found = None
        for decision in enumerate_decisions(state, offers_i, table, max_branch):
            try:
                nxt = step(state, decision, offers_i, table)
            except ConstraintViolation:
                continue
            rest = best(nxt)
            if rest is None:
                continue
            value = nxt.realized_profit - state.realized_profit + rest[0]
            if found is None or value > found[0]:
                found = value, (decision,) + rest[1]
        if memo:
            cache[k] = found
        return found

    root = best(BankState.initial(scenario))
    stats.states_stored = len(cache)
    # reject-all from the initial state never violates a constraint
    assert root is not None
    value, decisions = root
    policy = Policy(decisions)
    trajectory = simulate_policy(scenario, policy, table)
    assert trajectory.feasible and trajectory.profit == value
    return OptimalPlan(value, policy, trajectory, stats, scenario.currency_exponent)


def value_function(scenario: Scenario, capitals: list[int], **solve_kwargs) -> list[tuple[int, int]]:
    """Optimal value for each starting capital, all else held fixed."""
    out = []
    for w0 in capitals:
        if w0 <= 0:
            raise ValueError(f"initial capital must be positive, got {w0}")
        plan = solve(dataclasses.replace(scenario, initial_capital=w0), **solve_kwargs)
        out.append((w0, plan.value))
    return out
