"""Compiled kernels against their fallbacks and against independent oracles."""

import itertools

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from conftest import random_convex_bistochastic, random_row_stochastic, random_sinkhorn
from fuzzyrank import _kernels as K

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


def brute_discordant(pa, pb):
    return sum(1 for i, j in itertools.combinations(range(len(pa)), 2)
               if (pa[i] < pa[j]) != (pb[i] < pb[j]))


def has_perfect_matching(support):
    # maximum-weight assignment over 0/1 weights: perfect iff it uses n support cells
    rows, cols = linear_sum_assignment(support.astype(float), maximize=True)
    return int(support[rows, cols].sum()) == support.shape[0]


@pytest.mark.parametrize("impl", [K.discordant_pairs_fallback,
                                  pytest.param(K.discordant_pairs_jit, marks=needs_numba)])
def test_discordant_pairs_exhaustive(impl):
    for n in range(1, 6):
        base = np.arange(n)
        for perm in itertools.permutations(range(n)):
            p = np.array(perm, dtype=np.int64)
            assert impl(base, p) == brute_discordant(base, p)


@needs_numba
def test_dominance_paths_agree(rng):
    for _ in range(200):
        n = int(rng.integers(1, 8))
        h = np.cumsum(random_row_stochastic(rng, n), axis=1)
        # quantise so exact ties actually occur
        h = np.round(h * 4) / 4
        np.testing.assert_array_equal(K.dominance_codes_jit(h, 1e-9), K.dominance_codes_fallback(h, 1e-9))


def test_dominance_codes_antisymmetric(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        h = np.cumsum(random_row_stochastic(rng, n), axis=1)
        c = K.dominance_codes(h, 1e-9)
        flipped = np.where(np.abs(c) == 1, -c, c)
        np.testing.assert_array_equal(c, flipped.T)


@pytest.mark.parametrize("impl", [K.perfect_matching_fallback,
                                  pytest.param(K.perfect_matching_jit, marks=needs_numba)])
def test_matching_against_assignment_oracle(impl, rng):
    for _ in range(300):
        n = int(rng.integers(1, 8))
        support = rng.random((n, n)) < rng.uniform(0.15, 0.8)
        match = impl(support)
        if has_perfect_matching(support):
            assert sorted(match.tolist()) == list(range(n))
            assert support[np.arange(n), match].all()
        else:
            assert (match == -1).all()


def test_matching_exhaustive_small():
    # every 3x3 support pattern
    for bits in range(1 << 9):
        support = np.array([(bits >> k) & 1 for k in range(9)], dtype=bool).reshape(3, 3)
        exists = any(all(support[i, p[i]] for i in range(3)) for p in itertools.permutations(range(3)))
        match = K.perfect_matching(support)
        assert (match[0] >= 0) == exists


@needs_numba
def test_birkhoff_paths_agree(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        m = random_sinkhorn(rng, n) if rng.random() < 0.5 else random_convex_bistochastic(rng, n)
        c1, p1, s1 = K.birkhoff_jit(m, 1e-9)
        c2, p2, s2 = K.birkhoff_fallback(m, 1e-9)
        assert s1 == s2 == K.MATCH_OK
        np.testing.assert_array_equal(p1, p2)
        np.testing.assert_allclose(c1, c2, rtol=0, atol=1e-15)


def test_birkhoff_reports_missing_matching():
    # row sums 1 but the support has no perfect matching
    m = np.array([[0.5, 0.5, 0.0], [0.5, 0.5, 0.0], [0.5, 0.5, 0.0]])
    _, _, status = K.birkhoff(m, 1e-9)
    assert status == K.MATCH_NONE


def test_backend_name():
    assert K.backend() in ("numba", "numpy")
    assert K.USE_NUMBA == (K.HAVE_NUMBA and not K.DISABLED_BY_ENV)
