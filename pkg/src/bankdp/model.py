"""Domain types for the multi-period bank selection problem.

Money is carried as plain ``int`` counts of minor units (cents for a
currency with exponent 2). All ledger arithmetic stays in integers; the only
rounding happens when interest is accrued at contract origination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

MAX_MINOR = 2**62
MAX_OFFERS = 4096


class BankDPError(Exception):
    """Base class for all package errors."""


class ScenarioError(BankDPError, ValueError):
    """A scenario cannot be processed (domain error such as a negative coefficient)."""


class CapacityError(BankDPError):
    """A configured size bound was exceeded."""


def check_money(value: int, what: str = "amount") -> int:
    if abs(value) > MAX_MINOR:
        raise CapacityError(f"{what} {value} exceeds the money capacity of 2^62 minor units")
    return value


def format_money(value: int, exponent: int = 2) -> str:
    """Render minor units as a decimal string, e.g. ``11000 -> '110.00'``."""
    sign = "-" if value < 0 else ""
    value = abs(value)
    if exponent <= 0:
        return f"{sign}{value * 10 ** -exponent}"
    whole, frac = divmod(value, 10**exponent)
    return f"{sign}{whole}.{frac:0{exponent}d}"


class Side(str, enum.Enum):
    LOAN = "loan"
    DEPOSIT = "deposit"


@dataclass(frozen=True)
class RateParams:
    """Constant coefficients of the rate model.

    ``b1`` and ``s`` are money scales in minor units, ``b2`` is a term scale
    in periods; ``a0``/``c0`` are the starting lending/deposit coefficients.
    """

    a0: float
    c0: float
    b1: int
    b2: float
    s: int


@dataclass(frozen=True)
class Offer:
    id: str
    period: int
    side: Side
    principal: int
    term: int

    @property
    def maturity(self) -> int:
        return self.period + self.term - 1


@dataclass(frozen=True)
class Scenario:
    periods: int
    initial_capital: int
    rate_params: RateParams
    offers: tuple[Offer, ...] = ()
    currency_exponent: int = 2

    @cached_property
    def by_period(self) -> dict[int, tuple[Offer, ...]]:
        groups: dict[int, list[Offer]] = {i: [] for i in range(1, self.periods + 1)}
        for offer in self.offers:
            groups.setdefault(offer.period, []).append(offer)
        return {i: tuple(group) for i, group in groups.items()}

    def offers_in(self, period: int) -> tuple[Offer, ...]:
        return self.by_period.get(period, ())


def decision_order(offers: Iterable[Offer]) -> list[Offer]:
    """Bit-vector order of a period's offers: deposits first, then loans, file order within."""
    offers = list(offers)
    return [o for o in offers if o.side is Side.DEPOSIT] + [o for o in offers if o.side is Side.LOAN]


@dataclass(frozen=True)
class Decision:
    """Accept bits for every offer of one period (the control for that period)."""

    period: int
    accepted: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_bits(cls, period: int, ordered: Sequence[Offer], bits: Sequence[int]) -> "Decision":
        lookup = dict(zip((o.id for o in ordered), bits))
        return cls(period, lookup)

    @classmethod
    def from_ids(cls, period: int, offers: Sequence[Offer], ids: Iterable[str]) -> "Decision":
        chosen = set(ids)
        unknown = chosen - {o.id for o in offers}
        if unknown:
            raise ValueError(f"period {period}: unknown offer ids {sorted(unknown)}")
        return cls(period, {o.id: int(o.id in chosen) for o in offers})

    @classmethod
    def reject_all(cls, period: int, offers: Sequence[Offer]) -> "Decision":
        return cls(period, {o.id: 0 for o in offers})

    def accepted_ids(self, offers: Sequence[Offer]) -> list[str]:
        """Accepted ids in file order."""
        return [o.id for o in offers if self.accepted.get(o.id)]

    def bit_vector(self, offers: Sequence[Offer]) -> tuple[int, ...]:
        return tuple(self.accepted[o.id] for o in decision_order(offers))


@dataclass(frozen=True)
class Policy:
    decisions: tuple[Decision, ...]

    @classmethod
    def reject_all(cls, scenario: Scenario) -> "Policy":
        return cls(tuple(Decision.reject_all(i, scenario.offers_in(i))
                         for i in range(1, scenario.periods + 1)))

    def bit_vector(self, scenario: Scenario) -> tuple[int, ...]:
        bits: tuple[int, ...] = ()
        for d in self.decisions:
            bits += d.bit_vector(scenario.offers_in(d.period))
        return bits


def validate_scenario(scenario: Scenario, max_offers: int = MAX_OFFERS) -> list[str]:
    """Return every violated structural invariant; an empty list means valid.

    Beyond the field checks this also builds the rate table, so a scenario
    with a non-positive coefficient or an overflowing rate or payout is
    reported here rather than failing later.
    """
    from .ledger import accrue_payout
    from .rates import build_rate_table

    problems: list[str] = []
    n = scenario.periods
    if not isinstance(n, int) or n < 1:
        problems.append(f"periods: must be an integer >= 1, got {n!r}")
    if scenario.initial_capital <= 0:
        problems.append(f"initial_capital: must be > 0, got {scenario.initial_capital}")
    elif scenario.initial_capital > MAX_MINOR:
        problems.append("initial_capital: exceeds money capacity")

    p = scenario.rate_params
    for name in ("a0", "c0", "b1", "b2", "s"):
        if not getattr(p, name) > 0:
            problems.append(f"rate_params.{name}: must be > 0, got {getattr(p, name)!r}")
    if p.a0 < p.c0:
        problems.append(f"rate_params: a0 < c0 ({p.a0} < {p.c0})")

    if len(scenario.offers) > max_offers:
        problems.append(f"offers: {len(scenario.offers)} offers exceed capacity {max_offers}")
    seen: set[str] = set()
    for k, o in enumerate(scenario.offers):
        where = f"offers[{k}] ({o.id})"
        if o.id in seen:
            problems.append(f"{where}: duplicate id")
        seen.add(o.id)
        if not 1 <= o.period <= max(n, 0):
            problems.append(f"{where}: period {o.period} outside [1, {n}]")
        if o.principal <= 0:
            problems.append(f"{where}: principal must be > 0, got {o.principal}")
        elif o.principal > MAX_MINOR:
            problems.append(f"{where}: principal exceeds money capacity")
        if o.term < 1:
            problems.append(f"{where}: term must be >= 1, got {o.term}")
        elif o.maturity > n:
            problems.append(f"{where}: matures at period {o.maturity} > horizon {n}")

    if problems:
        return problems

    try:
        table = build_rate_table(scenario)
        for o in scenario.offers:
            accrue_payout(o.principal, table.rate[o.id])
    except (ScenarioError, CapacityError) as exc:
        problems.append(f"rates: {exc}")
    return problems
