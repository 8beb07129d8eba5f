import dataclasses

import pytest
from hypothesis import given

from bankdp import Decision, Offer, Policy, RateParams, Scenario, Side, validate_scenario
from bankdp.model import CapacityError, check_money, decision_order, format_money

from strategies import scenarios

PARAMS = RateParams(5.0, 3.0, 100000, 4.0, 10000)


def test_single_loan_is_valid():
    sc = Scenario(1, 10000, PARAMS, (Offer("L1_1", 1, Side.LOAN, 5000, 1),))
    assert validate_scenario(sc) == []


def test_maturity_past_horizon():
    sc = Scenario(3, 10000, PARAMS, (Offer("L2_1", 2, Side.LOAN, 5000, 3),))
    (problem,) = validate_scenario(sc)
    assert "matures at period 4 > horizon 3" in problem
    assert "L2_1" in problem


def test_a0_below_c0():
    sc = Scenario(1, 10000, RateParams(2.0, 5.0, 100000, 4.0, 10000))
    assert any("a0 < c0" in p for p in validate_scenario(sc))


@pytest.mark.parametrize("field,value", [("b1", 0), ("b2", -1.0), ("s", 0), ("c0", 0.0)])
def test_nonpositive_params(field, value):
    sc = Scenario(1, 10000, dataclasses.replace(PARAMS, **{field: value}))
    assert any(f"rate_params.{field}" in p for p in validate_scenario(sc))


def test_collects_every_violation():
    offers = (Offer("x", 1, Side.LOAN, 0, 1), Offer("x", 4, Side.DEPOSIT, 100, 0))
    problems = validate_scenario(Scenario(2, 0, PARAMS, offers))
    joined = "\n".join(problems)
    for needle in ("initial_capital", "duplicate id", "principal must be > 0",
                   "period 4 outside", "term must be >= 1"):
        assert needle in joined


def test_payout_overflow_is_a_violation():
    sc = Scenario(1, 10000, RateParams(5.0, 3.0, 2**62, 1.0, 1),
                  (Offer("big", 1, Side.DEPOSIT, 2**62, 1),))
    assert any("capacity" in p for p in validate_scenario(sc))


def test_offer_capacity():
    offers = tuple(Offer(f"o{k}", 1, Side.LOAN, 100, 1) for k in range(5))
    assert any("exceed capacity" in p for p in validate_scenario(Scenario(1, 10000, PARAMS, offers), max_offers=4))


def test_money_guard_and_format():
    assert check_money(2**62) == 2**62
    with pytest.raises(CapacityError):
        check_money(2**62 + 1)
    assert format_money(11000) == "110.00"
    assert format_money(-5) == "-0.05"
    assert format_money(7, 0) == "7"


def test_decision_order_puts_deposits_first():
    offers = [Offer("L1", 1, Side.LOAN, 1, 1), Offer("D1", 1, Side.DEPOSIT, 1, 1),
              Offer("L2", 1, Side.LOAN, 1, 1), Offer("D2", 1, Side.DEPOSIT, 1, 1)]
    assert [o.id for o in decision_order(offers)] == ["D1", "D2", "L1", "L2"]
    d = Decision.from_ids(1, offers, ["L2", "D1"])
    assert d.bit_vector(offers) == (1, 0, 0, 1)
    assert d.accepted_ids(offers) == ["D1", "L2"]
    with pytest.raises(ValueError):
        Decision.from_ids(1, offers, ["nope"])


def test_policy_reject_all_covers_every_period():
    sc = Scenario(3, 10000, PARAMS, (Offer("a", 2, Side.LOAN, 5, 1),))
    policy = Policy.reject_all(sc)
    assert [d.period for d in policy.decisions] == [1, 2, 3]
    assert policy.bit_vector(sc) == (0,)


@given(scenarios())
def test_validate_is_pure(sc):
    assert validate_scenario(sc) == validate_scenario(sc) == []
