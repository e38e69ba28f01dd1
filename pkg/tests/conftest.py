import numpy as np
import pytest

from unitary_designs.group_designs import HADAMARD, PHASE_GATE, chau_design, close_group
from unitary_designs.unitary_sets import haar_unitaries

ACCEPTANCE_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = (marker.args[0], item.name)
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        ACCEPTANCE_RESULTS[key] = rep.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    by_crit = {}
    for (num, name), outcome in sorted(ACCEPTANCE_RESULTS.items()):
        by_crit.setdefault(num, []).append((name, outcome))
    for num, entries in sorted(by_crit.items()):
        ok = all(o == "passed" for _, o in entries)
        names = ", ".join(n for n, _ in entries)
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({names})")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def haar(d, rng, n=None):
    if n is None:
        return haar_unitaries(d, 1, rng)[0]
    return haar_unitaries(d, n, rng)


@pytest.fixture(scope="session")
def clifford2():
    return close_group(np.stack([HADAMARD, PHASE_GATE]))


@pytest.fixture(scope="session")
def chau3():
    return chau_design(3)
