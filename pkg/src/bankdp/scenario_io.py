"""Scenario and plan files, seeded scenario generation, reports.

Every money field in files is an integer count of minor units. Parsing is
strict: unknown or missing fields and fractional money are errors.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Union

from .ledger import PeriodRecord, Trajectory
from .model import (
    MAX_MINOR,
    BankDPError,
    Decision,
    Offer,
    Policy,
    RateParams,
    Scenario,
    Side,
    validate_scenario,
)
from .solver import OptimalPlan, SearchStats

SCHEMA_VERSION = 1
MASK64 = (1 << 64) - 1


class FormatError(BankDPError, ValueError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# --------------------------------------------------------------------- parsing

def _fields(obj: Any, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", path)
    unknown = set(obj) - required - optional
    if unknown:
        raise FormatError(f"unknown field(s) {sorted(unknown)}", path)
    for name in sorted(required - set(obj)):
        raise FormatError("missing required field", f"{path}.{name}" if path else name)
    return obj


def _int(obj: dict, name: str, path: str, money: bool = False) -> int:
    where = f"{path}.{name}" if path else name
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, int):
        if money and isinstance(value, float):
            raise FormatError("minor units must be integers", where)
        raise FormatError(f"expected an integer, got {value!r}", where)
    if abs(value) > MAX_MINOR:
        raise FormatError("integer overflow (magnitude above 2^62)", where)
    return value


def _real(obj: dict, name: str, path: str) -> float:
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"expected a number, got {value!r}", f"{path}.{name}")
    return float(value)


def _load_json(text: Union[bytes, str]) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_scenario(text: Union[bytes, str]) -> Scenario:
    doc = _fields(_load_json(text), "",
                  {"schema_version", "periods", "initial_capital_minor", "rate_params", "offers"},
                  {"currency_exponent"})
    if _int(doc, "schema_version", "") != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {doc['schema_version']}", "schema_version")
    rp = _fields(doc["rate_params"], "rate_params",
                 {"a0", "c0", "b1_minor", "b2_periods", "s_minor"})
    params = RateParams(
        a0=_real(rp, "a0", "rate_params"),
        c0=_real(rp, "c0", "rate_params"),
        b1=_int(rp, "b1_minor", "rate_params", money=True),
        b2=_real(rp, "b2_periods", "rate_params"),
        s=_int(rp, "s_minor", "rate_params", money=True),
    )
    if not isinstance(doc["offers"], list):
        raise FormatError("expected a list", "offers")
    offers = []
    for k, raw in enumerate(doc["offers"]):
        path = f"offers[{k}]"
        o = _fields(raw, path, {"id", "period", "side", "principal_minor", "term_periods"})
        if not isinstance(o["id"], str) or not o["id"]:
            raise FormatError("id must be a non-empty string", f"{path}.id")
        try:
            side = Side(o["side"])
        except ValueError:
            raise FormatError(f"side must be 'loan' or 'deposit', got {o['side']!r}",
                              f"{path}.side") from None
        offers.append(Offer(o["id"], _int(o, "period", path), side,
                            _int(o, "principal_minor", path, money=True),
                            _int(o, "term_periods", path)))
    return Scenario(
        periods=_int(doc, "periods", ""),
        initial_capital=_int(doc, "initial_capital_minor", "", money=True),
        rate_params=params,
        offers=tuple(offers),
        currency_exponent=_int(doc, "currency_exponent", "") if "currency_exponent" in doc else 2,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    p = scenario.rate_params
    return {
        "schema_version": SCHEMA_VERSION,
        "periods": scenario.periods,
        "currency_exponent": scenario.currency_exponent,
        "initial_capital_minor": scenario.initial_capital,
        "rate_params": {"a0": float(p.a0), "c0": float(p.c0), "b1_minor": p.b1,
                        "b2_periods": float(p.b2), "s_minor": p.s},
        "offers": [{"id": o.id, "period": o.period, "side": o.side.value,
                    "principal_minor": o.principal, "term_periods": o.term}
                   for o in scenario.offers],
    }


def dump_scenario(scenario: Scenario) -> bytes:
    return (json.dumps(scenario_to_dict(scenario), indent=2, ensure_ascii=False) + "\n").encode()


# ------------------------------------------------------------------ generation

class SplitMix64:
    """splitmix64 stream (Steele, Lea, Flood); one 64-bit word per call."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform on [lo, hi] by rejection, so no modulo bias."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            x = self.next()
            if x < limit:
                return lo + x % span


@dataclass(frozen=True)
class GeneratorConfig:
    periods: int = 3
    loans_per_period: int = 2
    deposits_per_period: int = 2
    principal_range: tuple[int, int] = (1000, 20000)
    term_range: tuple[int, int] = (1, 3)
    rate_params: RateParams = field(default_factory=lambda: RateParams(5.0, 3.0, 100000, 4.0, 100000))
    initial_capital: int = 10000
    seed: int = 0
    currency_exponent: int = 2


def generate_scenario(config: GeneratorConfig) -> Scenario:
    """Deterministic random instance.

    Draw order per period: every loan (principal, then term), then every
    deposit. Terms are drawn on the configured range clipped so the
    contract matures within the horizon.
    """
    lo, hi = config.principal_range
    tlo, thi = config.term_range
    if config.periods < 1:
        raise ValueError("periods must be >= 1")
    if config.loans_per_period < 0 or config.deposits_per_period < 0:
        raise ValueError("offer counts must be >= 0")
    if not 0 < lo <= hi:
        raise ValueError(f"principal range {config.principal_range} is empty or non-positive")
    if not 1 <= tlo <= thi:
        raise ValueError(f"term range {config.term_range} is empty or below 1")
    if not 0 <= config.seed <= MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")

    rng = SplitMix64(config.seed)
    offers = []
    for i in range(1, config.periods + 1):
        room = config.periods - i + 1
        t_hi = min(thi, room)
        t_lo = min(tlo, t_hi)
        for side, count, tag in ((Side.LOAN, config.loans_per_period, "L"),
                                 (Side.DEPOSIT, config.deposits_per_period, "D")):
            for k in range(1, count + 1):
                principal = rng.randint(lo, hi)
                term = rng.randint(t_lo, t_hi)
                offers.append(Offer(f"{tag}{i}_{k}", i, side, principal, term))
    scenario = Scenario(config.periods, config.initial_capital, config.rate_params,
                        tuple(offers), config.currency_exponent)
    problems = validate_scenario(scenario)
    if problems:
        raise ValueError("generator config yields an invalid scenario: " + "; ".join(problems))
    return scenario


# --------------------------------------------------------------------- reports

def plan_to_dict(plan: OptimalPlan) -> dict:
    # a plan's trajectory is complete, and its records list accepted ids in file order
    policy = [{"period": r.period, "accepted": list(r.accepted)} for r in plan.trajectory.records]
    return {
        "schema_version": SCHEMA_VERSION,
        "value_minor": plan.value,
        "currency_exponent": plan.currency_exponent,
        "initial_capital_minor": plan.trajectory.initial_capital,
        "policy": policy,
        "trajectory": [{"period": r.period, "cash_end_minor": r.cash_end,
                        "profit_cum_minor": r.profit_cum, "balance_minor": r.balance,
                        "accepted": list(r.accepted)} for r in plan.trajectory.records],
        "stats": asdict(plan.stats),
    }


def write_report(plan: OptimalPlan, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(plan_to_dict(plan), indent=2) + "\n").encode()
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["period", "cash_end_minor", "profit_cum_minor", "balance_minor",
                         "accepted_ids"])
        for r in plan.trajectory.records:
            writer.writerow([r.period, r.cash_end, r.profit_cum, r.balance, ";".join(r.accepted)])
        return buf.getvalue().encode()
    raise ValueError(f"unknown report format {format!r}")


def parse_plan(text: Union[bytes, str], scenario: Scenario | None = None) -> OptimalPlan:
    """Read a plan file back.

    Decisions carry only accepted ids in the file; with a scenario the
    rejected offers are filled in so the policy can be simulated.
    """
    doc = _fields(_load_json(text), "",
                  {"schema_version", "value_minor", "policy", "trajectory", "stats"},
                  {"currency_exponent", "initial_capital_minor"})
    decisions = []
    for k, entry in enumerate(doc["policy"]):
        e = _fields(entry, f"policy[{k}]", {"period", "accepted"})
        period = _int(e, "period", f"policy[{k}]")
        if scenario is not None:
            decisions.append(Decision.from_ids(period, scenario.offers_in(period), e["accepted"]))
        else:
            decisions.append(Decision(period, {i: 1 for i in e["accepted"]}))
    records = tuple(PeriodRecord(r["period"], r["cash_end_minor"], r["profit_cum_minor"],
                                 r["balance_minor"], tuple(r["accepted"]))
                    for r in doc["trajectory"])
    w0 = doc.get("initial_capital_minor", scenario.initial_capital if scenario else 0)
    return OptimalPlan(_int(doc, "value_minor", ""), Policy(tuple(decisions)),
                       Trajectory(w0, records, True), SearchStats(**doc["stats"]),
                       doc.get("currency_exponent", 2))
