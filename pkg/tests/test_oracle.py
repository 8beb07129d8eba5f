import pytest
from hypothesis import given, settings

from bankdp import (
    CapacityError,
    Decision,
    Offer,
    Policy,
    RateParams,
    Scenario,
    Side,
    brute_force_solve,
    compare_plans,
    solve,
)
from bankdp.ledger import Trajectory
from bankdp.solver import OptimalPlan, SearchStats

from strategies import scenarios

PARAMS = RateParams(5.0, 3.0, 100000, 4.0, 10000)


def test_zero_offers_single_policy():
    plan = brute_force_solve(Scenario(2, 10000, PARAMS))
    assert plan.value == 0
    assert plan.stats.policies_evaluated == 1


def test_micro(micro):
    scenario, table = micro
    plan = brute_force_solve(scenario, table=table)
    assert plan.value == 1000
    assert plan.stats.policies_evaluated == 4
    assert plan.policy.decisions[0].accepted_ids(scenario.offers_in(1)) == ["L1_1", "D1_1"]


def test_counts_every_policy():
    offers = tuple(Offer(f"{tag}{i}", i, side, 2000, 1)
                   for i in (1, 2) for tag, side in (("L", Side.LOAN), ("D", Side.DEPOSIT)))
    assert brute_force_solve(Scenario(2, 10000, PARAMS, offers)).stats.policies_evaluated == 16


def test_oracle_bound():
    offers = tuple(Offer(f"L{k}", 1, Side.LOAN, 100, 1) for k in range(5))
    with pytest.raises(CapacityError):
        brute_force_solve(Scenario(1, 10000, PARAMS, offers), max_policies=16)


def _plan(value, accepted):
    policy = Policy((Decision(1, accepted),))
    return OptimalPlan(value, policy, Trajectory(10000, (), True), SearchStats())


def test_compare_equal():
    report = compare_plans(_plan(1000, {"a": 1}), _plan(1000, {"a": 1}))
    assert report.equal and str(report) == "equal"


def test_compare_value_mismatch():
    report = compare_plans(_plan(1000, {"a": 1}), _plan(900, {"a": 1}))
    assert not report.values_equal
    assert str(report) == "value mismatch, Δ = 1.00"


def test_compare_tie_anomaly():
    report = compare_plans(_plan(1000, {"a": 1, "b": 0}), _plan(1000, {"a": 0, "b": 1}))
    assert report.tie_anomaly
    assert report.first_divergence == 1
    assert str(report).startswith("tie anomaly")


@settings(max_examples=80, deadline=None)
@given(scenarios(max_periods=3, max_side=2))
def test_dp_agrees_with_oracle(sc):
    dp, bf = solve(sc), brute_force_solve(sc)
    assert compare_plans(dp, bf).equal
    assert dp.trajectory == bf.trajectory


@settings(max_examples=30, deadline=None)
@given(scenarios(max_periods=2, max_side=2))
def test_oracle_totality(sc):
    # every policy is either feasible with a profit or infeasible with a located violation
    from bankdp import build_rate_table, simulate_policy
    from bankdp.model import decision_order
    import itertools
    table = build_rate_table(sc)
    per = [[Decision.from_bits(i, decision_order(sc.offers_in(i)), b)
            for b in itertools.product((0, 1), repeat=len(sc.offers_in(i)))]
           for i in range(1, sc.periods + 1)]
    for ds in itertools.product(*per):
        t = simulate_policy(sc, Policy(ds), table)
        if t.feasible:
            assert t.violation is None and isinstance(t.profit, int)
        else:
            period, cid = t.violation
            assert 1 <= period <= sc.periods and cid in {"C1", "C2", "C3", "C4"}
            assert len(t.records) == period - 1
