import numpy as np
import pytest

from oimac.distributions import (
    erlang,
    exponential,
    make_aen_mix,
    make_geometric_spaced,
    make_maxmass_discrete,
    point_mass,
    uniform,
)
from oimac.peak_power import sum_law


def oracle_suite():
    """Ten input laws covering every representation the MI engine handles."""
    return {
        "point_mass": point_mass(0.0),
        "exponential_10": exponential(10.0),
        "exponential_0.5": exponential(0.5),
        "uniform_10": uniform(10.0),
        "uniform_2": uniform(2.0),
        "aen_mix_2_1": make_aen_mix(2.0, 1.0),
        "geometric_5_2": make_geometric_spaced(5.0, 2.0),
        "erlang_3_2": erlang(3, 2.0),
        "maxmass_1.7": make_maxmass_discrete(1.7, 3.0, "shifted_nonneg"),
        "uniform_plus_discrete": sum_law(1.7, 3.0),
    }


@pytest.fixture(scope="session")
def suite():
    return oracle_suite()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_CRITERIA = 13
_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture
def verdict(request):
    """Record and assert one acceptance criterion; the line is echoed in the terminal summary."""
    store = request.config.stash.setdefault(_VERDICTS, {})

    def record(number: int, title: str, ok: bool, detail: str):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        store[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_VERDICTS, {})
    if not store:
        return
    terminalreporter.section("acceptance")
    for n in range(1, ACCEPTANCE_CRITERIA + 1):
        terminalreporter.write_line(store.get(n, f"criterion {n:>2} FAIL  no verdict recorded"))
