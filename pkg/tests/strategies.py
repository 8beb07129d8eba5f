"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from bankdp import Decision, GeneratorConfig, Policy, RateParams, generate_scenario


@st.composite
def generator_configs(draw, max_periods=3, max_side=3):
    return GeneratorConfig(
        periods=draw(st.integers(1, max_periods)),
        loans_per_period=draw(st.integers(0, max_side)),
        deposits_per_period=draw(st.integers(0, max_side)),
        principal_range=(1000, draw(st.integers(1000, 30000))),
        term_range=(1, draw(st.integers(1, 3))),
        rate_params=RateParams(draw(st.sampled_from([4.0, 5.0, 8.0])), 3.0, 100000, 4.0, 100000),
        initial_capital=draw(st.integers(1, 40000)),
        seed=draw(st.integers(0, 2**64 - 1)),
    )


def scenarios(**kw):
    return generator_configs(**kw).map(generate_scenario)


def random_policy(draw, scenario):
    decisions = []
    for i in range(1, scenario.periods + 1):
        offers = scenario.offers_in(i)
        bits = draw(st.lists(st.integers(0, 1), min_size=len(offers), max_size=len(offers)))
        decisions.append(Decision(i, {o.id: b for o, b in zip(offers, bits)}))
    return Policy(tuple(decisions))


@st.composite
def scenario_policy_pairs(draw, **kw):
    scenario = draw(scenarios(**kw))
    return scenario, random_policy(draw, scenario)
