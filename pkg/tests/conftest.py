from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance_results = {}


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_permutation_matrix(rng, n):
    m = np.zeros((n, n))
    m[np.arange(n), rng.permutation(n)] = 1.0
    return m


def random_convex_bistochastic(rng, n, terms=None):
    """Convex combination of random permutation matrices (doubly stochastic by construction)."""
    terms = terms or int(rng.integers(1, 2 * n + 2))
    w = rng.dirichlet(np.ones(terms))
    return sum(wk * random_permutation_matrix(rng, n) for wk in w)


def random_sinkhorn(rng, n, iters=2000):
    """Dense doubly stochastic matrix by alternate row/column normalisation."""
    m = rng.random((n, n)) + 0.05
    for _ in range(iters):
        m /= m.sum(axis=1, keepdims=True)
        m /= m.sum(axis=0, keepdims=True)
        if np.abs(m.sum(axis=1) - 1).max() < 1e-14:
            break
    return m


def random_row_stochastic(rng, n, sparsity=0.3):
    m = rng.random((n, n))
    m[rng.random((n, n)) < sparsity] = 0.0
    for i in range(n):
        if m[i].sum() == 0:
            m[i, rng.integers(n)] = 1.0
    return m / m.sum(axis=1, keepdims=True)


# -- acceptance reporting ------------------------------------------------------

def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    key = (number, title)
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    prev = _acceptance_results.get(key, True)
    if call.when in ("setup", "call", "teardown"):
        _acceptance_results[key] = prev and not failed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")

    def order(key):
        number = str(key[0])
        return (int("".join(c for c in number if c.isdigit()) or 0), number)

    for key in sorted(_acceptance_results, key=order):
        status = "PASS" if _acceptance_results[key] else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {key[0]}: {key[1]}")
