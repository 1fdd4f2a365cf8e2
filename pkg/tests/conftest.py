import numpy as np
import pytest
from scipy.stats import unitary_group

ACCEPTANCE_LINES = []


def random_unitary(n, seed):
    return unitary_group.rvs(n, random_state=seed)


def random_pd(n, rng, ridge=1e-2):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = x @ x.conj().T / n + ridge * np.eye(n)
    return 0.5 * (m + m.conj().T)


def random_density(n, rng):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = x @ x.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def record_acceptance():
    def record(tag, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
