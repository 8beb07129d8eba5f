"""Period-by-period cash ledger of the bank.

Within a period the order is: accepted contracts originate (deposits add
cash, loans remove it), then every contract maturing this period settles
(loans pay back principal plus interest, deposits are repaid with interest).
Four feasibility checks guard each period:

    C1  budget      accepted loans <= cash + accepted deposits
    C2  solvency    cash after originations + maturing loan payouts
                    >= maturing deposit payouts
    C3  liquidity   end-of-period cash > 0
    C4  no loss     end-of-period cash >= initial capital
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .model import (
    BankDPError,
    CapacityError,
    Decision,
    Offer,
    Policy,
    Scenario,
    Side,
    check_money,
    decision_order,
)
from .rates import RateTable

MAX_BRANCH = 2**20

BUDGET, SOLVENCY, LIQUIDITY, NO_LOSS = "C1", "C2", "C3", "C4"


class ConstraintViolation(BankDPError):
    def __init__(self, period: int, constraint: str, detail: str = ""):
        self.period = period
        self.constraint = constraint
        super().__init__(f"period {period}: {constraint} violated" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True, order=True)
class LedgerEntry:
    # field order is the canonical sort order of outstanding contracts
    maturity_period: int
    side: Side
    principal: int
    payout: int
    offer_id: str


_canonical = operator.attrgetter("maturity_period", "side", "principal", "payout", "offer_id")


@dataclass(frozen=True)
class BankState:
    next_period: int
    cash: int
    initial_capital: int
    outstanding: tuple[LedgerEntry, ...] = ()
    realized_profit: int = 0

    @classmethod
    def initial(cls, scenario: Scenario) -> "BankState":
        return cls(1, scenario.initial_capital, scenario.initial_capital)

    @property
    def balance(self) -> int:
        """Outstanding deposit principal minus outstanding loan principal."""
        return sum(e.principal if e.side is Side.DEPOSIT else -e.principal
                   for e in self.outstanding)


@dataclass(frozen=True)
class PeriodRecord:
    period: int
    cash_end: int
    profit_cum: int
    balance: int
    accepted: tuple[str, ...]


@dataclass(frozen=True)
class Trajectory:
    initial_capital: int
    records: tuple[PeriodRecord, ...]
    feasible: bool
    violation: Optional[tuple[int, str]] = None

    @property
    def profit(self) -> Optional[int]:
        """Final profit cash_end[n] - W0, or None if infeasible."""
        if not self.feasible:
            return None
        if not self.records:
            return 0
        return self.records[-1].cash_end - self.initial_capital


@lru_cache(maxsize=1 << 16)
def accrue_payout(principal: int, rate: float) -> int:
    """Principal plus interest, interest rounded half-up to whole minor units.

    The rounding applies to the exact product of the principal and the
    binary64 rate, so 250 * 0.05 rounds up to 13 regardless of how the
    float product would have rounded.
    """
    if principal <= 0 or not rate >= 0:
        raise ValueError(f"bad accrual inputs: principal={principal}, rate={rate}")
    if not math.isfinite(rate):
        raise CapacityError("payout overflow: rate is not finite")
    interest = math.floor(Fraction(rate) * principal + Fraction(1, 2))
    return check_money(principal + interest, "payout")


def enumerate_decisions(state: BankState, offers_i: Sequence[Offer], table: RateTable,
                        max_branch: int = MAX_BRANCH) -> list[Decision]:
    """Every accept/reject assignment for the period that passes the budget check.

    Assignments are produced in lexicographic order of the bit vector
    (deposits first, then loans, file order within each), all-zeros first.
    """
    k = len(offers_i)
    if 2**k > max_branch:
        raise CapacityError(f"period {state.next_period}: {k} offers give 2^{k} decisions, "
                            f"bound is {max_branch}")
    ordered = decision_order(offers_i)
    signed = [o.principal if o.side is Side.DEPOSIT else -o.principal for o in ordered]
    cash = state.cash
    out = []
    for bits in itertools.product((0, 1), repeat=k):
        if cash + sum(v for v, b in zip(signed, bits) if b) >= 0:
            out.append(Decision.from_bits(state.next_period, ordered, bits))
    return out


def step(state: BankState, decision: Decision, offers_i: Sequence[Offer],
         table: RateTable) -> BankState:
    """Apply one period's decision; raise ConstraintViolation if any check fails."""
    i = state.next_period
    accepted = decision.accepted
    if decision.period != i or len(accepted) != len(offers_i) or any(
            o.id not in accepted or o.period != i for o in offers_i):
        raise ValueError(f"decision for period {decision.period} does not cover the offers "
                         f"of period {i}")

    cash = state.cash
    new_entries = []
    lent = taken = 0
    for o in offers_i:
        bit = accepted[o.id]
        if bit not in (0, 1):
            raise ValueError(f"offer {o.id}: accept bit must be 0 or 1, got {bit!r}")
        if not bit:
            continue
        if o.side is Side.LOAN:
            lent += o.principal
        else:
            taken += o.principal
        new_entries.append(LedgerEntry(o.maturity, o.side, o.principal,
                                       accrue_payout(o.principal, table.rate[o.id]), o.id))
    if lent > cash + taken:
        raise ConstraintViolation(i, BUDGET, f"lent {lent} > cash {cash} + deposits {taken}")
    cash = check_money(cash + taken - lent, "cash")

    repaid_in = paid_out = profit = 0
    keep = []
    book = state.outstanding
    if new_entries:
        book = tuple(sorted(book + tuple(new_entries), key=_canonical))
    for e in book:
        if e.maturity_period != i:
            keep.append(e)
        elif e.side is Side.LOAN:
            repaid_in += e.payout
            profit += e.payout - e.principal
        else:
            paid_out += e.payout
            profit -= e.payout - e.principal
    if cash + repaid_in < paid_out:
        raise ConstraintViolation(i, SOLVENCY, f"{cash} + {repaid_in} < {paid_out}")
    cash = check_money(cash + repaid_in - paid_out, "cash")
    if cash <= 0:
        raise ConstraintViolation(i, LIQUIDITY, f"cash {cash} <= 0")
    if cash < state.initial_capital:
        raise ConstraintViolation(i, NO_LOSS, f"cash {cash} < W0 {state.initial_capital}")
    return BankState(i + 1, cash, state.initial_capital, tuple(keep),
                     state.realized_profit + profit)


def simulate_policy(scenario: Scenario, policy: Policy, table: RateTable) -> Trajectory:
    """Run a policy from W0 and record the capital path, stopping at the first violation."""
    if len(policy.decisions) != scenario.periods or any(
            d.period != i for i, d in enumerate(policy.decisions, start=1)):
        raise ValueError("policy must hold one decision per period, indexed 1..n")
    w0 = scenario.initial_capital
    state = BankState.initial(scenario)
    records = []
    for decision in policy.decisions:
        offers_i = scenario.offers_in(decision.period)
        try:
            state = step(state, decision, offers_i, table)
        except ConstraintViolation as v:
            return Trajectory(w0, tuple(records), False, (v.period, v.constraint))
        balance = state.balance
        assert state.cash == w0 + state.realized_profit + balance
        records.append(PeriodRecord(decision.period, state.cash, state.realized_profit,
                                    balance, tuple(decision.accepted_ids(offers_i))))
    assert not state.outstanding, "contracts outstanding past the horizon"
    assert state.cash == w0 + state.realized_profit
    return Trajectory(w0, tuple(records), True)
