import numpy as np
import pytest

from torusq.classical import baker_orbit_from_bits, cat_orbit
from torusq.quantum import eigendecompose, quantize


def random_density(rng, N, rank=None):
    k = N if rank is None else rank
    X = rng.normal(size=(N, k)) + 1j * rng.normal(size=(N, k))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_state(rng, N):
    v = rng.normal(size=N) + 1j * rng.normal(size=N)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def baker100():
    return quantize("baker", 100)


@pytest.fixture(scope="session")
def cat100():
    return quantize("cat", 100)


@pytest.fixture(scope="session")
def baker100_pairs(baker100):
    return eigendecompose(baker100)


@pytest.fixture(scope="session")
def cat100_pairs(cat100):
    return eigendecompose(cat100)


@pytest.fixture(scope="session")
def orbit01():
    return baker_orbit_from_bits("01")


@pytest.fixture(scope="session")
def cat_orbit3():
    return cat_orbit(3, 0)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome, props.get("measured", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, outcome, measured in sorted(lines, key=lambda x: x[0]):
            terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if outcome == 'passed' else 'FAIL'}  {measured}")
