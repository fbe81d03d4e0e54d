"""Shared fixtures.

The spherical default grid and the orbitals sampled on it dominate the
suite's runtime and memory, so both are built once per session and
handed out through caching factories.  Line grids are cheap but shared
for consistency.
"""

import math

import pytest

import dequant as dq


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    name = report.nodeid.rpartition("::")[2]
    if report.when == "call" and name.startswith("test_criterion"):
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {name}: {verdict}", flush=True)


@pytest.fixture(scope="session")
def spherical_grid():
    return dq.make_spherical_grid()


@pytest.fixture(scope="session")
def orbital_of(spherical_grid):
    cache = {}

    def get(n, l, m):
        key = (n, l, m)
        if key not in cache:
            cache[key] = dq.orbital(dq.OrbitalSpec(n, l, m), spherical_grid)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def report_of(orbital_of):
    cache = {}

    def get(n, l, m):
        key = (n, l, m)
        if key not in cache:
            cache[key] = dq.decompose(orbital_of(n, l, m))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def pib_grid():
    return dq.make_uniform_grid(0.0, 1.0, 4001)


@pytest.fixture(scope="session")
def gauss_grid():
    return dq.make_uniform_grid(-60.0, 60.0, 4001)


@pytest.fixture(scope="session")
def pib_pair():
    amp = math.sqrt(0.5)
    return dq.PibSuperposition((amp, amp))


@pytest.fixture(scope="session")
def packet():
    return dq.GaussianPacket()
