"""Exogenous interest rates for every offer.

Lending rate:  a_i / 100 * exp(P / b1 - tau / b2)
Deposit rate:  c_i / 100 * exp(D / b1 + tau / b2)

The period coefficients move with the change in offered volume two periods
back: a_i = a_{i-1} + (Q_p[i-1] - Q_p[i-2]) / s, with Q taken as 0 before
period 1, so a_1 = a0. Demand totals count every offer, accepted or not,
which keeps the rates independent of the bank's choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import RateParams, Scenario, ScenarioError, Side, check_money


class RateOverflowError(ScenarioError):
    pass


@dataclass(frozen=True)
class RateTable:
    loan_demand: tuple[int, ...]
    deposit_total: tuple[int, ...]
    a: tuple[float, ...]
    c: tuple[float, ...]
    rate: dict[str, float]


def demand_totals(scenario: Scenario) -> tuple[list[int], list[int]]:
    """Per-period offered loan volume and deposit volume, index 0 is period 1."""
    q_loan = [0] * scenario.periods
    q_dep = [0] * scenario.periods
    for o in scenario.offers:
        totals = q_loan if o.side is Side.LOAN else q_dep
        totals[o.period - 1] = check_money(totals[o.period - 1] + o.principal,
                                           f"period {o.period} {o.side.value} total")
    return q_loan, q_dep


def _recurrence(start: float, totals: list[int], s: int, name: str) -> list[float]:
    coeffs = [float(start)]
    for i in range(2, len(totals) + 1):
        prev = totals[i - 2]
        prev2 = totals[i - 3] if i >= 3 else 0
        coeffs.append(coeffs[-1] + (prev - prev2) / s)
    for i, value in enumerate(coeffs, start=1):
        if not value > 0:
            raise ScenarioError(f"coefficient {name}_{i} = {value} is not positive")
    return coeffs


def coefficient_sequences(scenario: Scenario) -> tuple[list[float], list[float]]:
    p = scenario.rate_params
    if not p.s > 0:
        raise ScenarioError("s must be positive")
    q_loan, q_dep = demand_totals(scenario)
    return _recurrence(p.a0, q_loan, p.s, "a"), _recurrence(p.c0, q_dep, p.s, "c")


def _rate(coeff: float, exponent: float) -> float:
    try:
        value = coeff / 100 * math.exp(exponent)
    except OverflowError:
        raise RateOverflowError("rate overflow") from None
    if not math.isfinite(value):
        raise RateOverflowError("rate overflow")
    return value


def lending_rate(a_i: float, principal: int, term: int, params: RateParams) -> float:
    return _rate(a_i, principal / params.b1 - term / params.b2)


def deposit_rate(c_i: float, principal: int, term: int, params: RateParams) -> float:
    return _rate(c_i, principal / params.b1 + term / params.b2)


def build_rate_table(scenario: Scenario) -> RateTable:
    q_loan, q_dep = demand_totals(scenario)
    a, c = coefficient_sequences(scenario)
    p = scenario.rate_params
    rate = {}
    for o in scenario.offers:
        if o.side is Side.LOAN:
            rate[o.id] = lending_rate(a[o.period - 1], o.principal, o.term, p)
        else:
            rate[o.id] = deposit_rate(c[o.period - 1], o.principal, o.term, p)
    return RateTable(tuple(q_loan), tuple(q_dep), tuple(a), tuple(c), rate)
