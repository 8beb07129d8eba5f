from pathlib import Path

import pytest

from bankdp import Offer, RateParams, Scenario, Side
from bankdp.rates import RateTable

DATA = Path(__file__).parent / "data"

_criteria = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def micro():
    """One period, W0 = 100.00, loan 120.00 at 10%, deposit 50.00 at 4%, both term 1."""
    scenario = Scenario(
        periods=1,
        initial_capital=10000,
        rate_params=RateParams(5.0, 3.0, 100000, 4.0, 10000),
        offers=(Offer("L1_1", 1, Side.LOAN, 12000, 1), Offer("D1_1", 1, Side.DEPOSIT, 5000, 1)),
    )
    table = RateTable((12000,), (5000,), (5.0,), (3.0,), {"L1_1": 0.10, "D1_1": 0.04})
    return scenario, table


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        _criteria.append((*marker.args, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, outcome, duration in sorted(_criteria, key=lambda c: int(c[0][2:])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {cid}  {title}  ({duration:.1f}s)")
