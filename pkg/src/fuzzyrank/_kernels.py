"""Inner loops, compiled with numba when it is available.

Every kernel has two implementations:

* a loop version, written in the numba-compatible subset and compiled with
  ``@njit(cache=True)`` on first call;
* a fallback used when numba is missing or ``FUZZYRANK_DISABLE_NUMBA`` is set.
  Where the computation vectorises cleanly the fallback is plain numpy;
  the matching search has no vectorised form, so its fallback is the same
  loop run by the interpreter, driven by a numpy outer loop.

Dominance codes used by :func:`dominance_codes`: ``1`` row dominates column,
``-1`` row dominated by column, ``0`` tied, ``2`` incomparable.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    njit = None
    HAVE_NUMBA = False

_FALSY = {"", "0", "false", "no", "off"}
DISABLED_BY_ENV = os.environ.get("FUZZYRANK_DISABLE_NUMBA", "").strip().lower() not in _FALSY
USE_NUMBA = HAVE_NUMBA and not DISABLED_BY_ENV

DOMINATES = 1
DOMINATED = -1
TIED = 0
INCOMPARABLE = 2

MATCH_OK = 0
MATCH_NONE = 1
MATCH_TOO_MANY = 2


# -- Kendall pair counting ---------------------------------------------------

def _discordant_pairs_loop(pos_a, pos_b):
    n = pos_a.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (pos_a[i] - pos_a[j]) * (pos_b[i] - pos_b[j]) < 0:
                count += 1
    return count


def _discordant_pairs_numpy(pos_a, pos_b):
    da = np.sign(pos_a[:, None] - pos_a[None, :])
    db = np.sign(pos_b[:, None] - pos_b[None, :])
    return int(np.count_nonzero(np.triu(da * db < 0, 1)))


# -- pairwise dominance over cumulative rows -----------------------------------

def _dominance_codes_loop(H, eps):
    n = H.shape[0]
    m = H.shape[1]
    codes = np.zeros((n, n), dtype=np.int8)
    for r in range(n):
        for s in range(r + 1, n):
            higher = False
            lower = False
            for j in range(m):
                d = H[r, j] - H[s, j]
                if d > eps:
                    higher = True
                elif d < -eps:
                    lower = True
            if higher and lower:
                codes[r, s] = 2
                codes[s, r] = 2
            elif higher:
                codes[r, s] = 1
                codes[s, r] = -1
            elif lower:
                codes[r, s] = -1
                codes[s, r] = 1
    return codes


def _dominance_codes_numpy(H, eps):
    diff = H[:, None, :] - H[None, :, :]
    higher = (diff > eps).any(axis=2)
    lower = (diff < -eps).any(axis=2)
    codes = np.zeros(higher.shape, dtype=np.int8)
    codes[higher & ~lower] = DOMINATES
    codes[lower & ~higher] = DOMINATED
    codes[higher & lower] = INCOMPARABLE
    return codes


# -- perfect matching on a bipartite support -----------------------------------

def _perfect_matching_loop(support):
    """Kuhn's augmenting-path search, rows in order, columns ascending.

    Returns row -> column assignment, or an array of -1 if no perfect
    matching exists.
    """
    n = support.shape[0]
    owner = np.full(n, -1, dtype=np.int64)  # column -> row
    stack_row = np.empty(n + 1, dtype=np.int64)
    stack_next = np.empty(n + 1, dtype=np.int64)
    via_col = np.empty(n + 1, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)
    for root in range(n):
        visited[:] = False
        depth = 0
        stack_row[0] = root
        stack_next[0] = 0
        found = False
        while depth >= 0:
            u = stack_row[depth]
            pushed = False
            while stack_next[depth] < n:
                c = stack_next[depth]
                stack_next[depth] += 1
                if support[u, c] and not visited[c]:
                    visited[c] = True
                    via_col[depth] = c
                    if owner[c] == -1:
                        found = True
                    else:
                        depth += 1
                        stack_row[depth] = owner[c]
                        stack_next[depth] = 0
                        pushed = True
                    break
            if found:
                break
            if not pushed:
                depth -= 1
        if not found:
            return np.full(n, -1, dtype=np.int64)
        for d in range(depth + 1):
            owner[via_col[d]] = stack_row[d]
    match = np.empty(n, dtype=np.int64)
    for c in range(n):
        match[owner[c]] = c
    return match


# -- greedy Birkhoff decomposition -------------------------------------------

def _birkhoff_loop(F, eps):
    n = F.shape[0]
    R = F.copy()
    max_terms = (n - 1) * (n - 1) + 1
    coeffs = np.zeros(max_terms, dtype=np.float64)
    perms = np.zeros((max_terms, n), dtype=np.int64)
    k = 0
    while True:
        alive = False
        for i in range(n):
            for j in range(n):
                if R[i, j] <= eps:
                    R[i, j] = 0.0
                else:
                    alive = True
        if not alive:
            return coeffs[:k], perms[:k], MATCH_OK
        if k == max_terms:
            return coeffs[:k], perms[:k], MATCH_TOO_MANY
        match = perfect_matching_jit(R > 0.0)
        if match[0] < 0:
            return coeffs[:k], perms[:k], MATCH_NONE
        c = R[0, match[0]]
        for i in range(1, n):
            if R[i, match[i]] < c:
                c = R[i, match[i]]
        for i in range(n):
            R[i, match[i]] -= c
            perms[k, i] = match[i]
        coeffs[k] = c
        k += 1


def _birkhoff_numpy(F, eps):
    n = F.shape[0]
    R = F.copy()
    rows = np.arange(n)
    coeffs, perms = [], []
    max_terms = (n - 1) * (n - 1) + 1
    while True:
        R[R <= eps] = 0.0
        if not R.any():
            status = MATCH_OK
            break
        if len(coeffs) == max_terms:
            status = MATCH_TOO_MANY
            break
        match = _perfect_matching_loop(R > 0.0)
        if match[0] < 0:
            status = MATCH_NONE
            break
        c = R[rows, match].min()
        R[rows, match] -= c
        coeffs.append(c)
        perms.append(match)
    return (np.array(coeffs, dtype=np.float64),
            np.array(perms, dtype=np.int64).reshape(len(perms), n), status)


if HAVE_NUMBA:
    discordant_pairs_jit = njit(cache=True)(_discordant_pairs_loop)
    dominance_codes_jit = njit(cache=True)(_dominance_codes_loop)
    perfect_matching_jit = njit(cache=True)(_perfect_matching_loop)
    birkhoff_jit = njit(cache=True)(_birkhoff_loop)
else:  # pragma: no cover
    discordant_pairs_jit = dominance_codes_jit = None
    perfect_matching_jit = birkhoff_jit = None

# fallback implementations, always importable for tests and benchmarks
discordant_pairs_fallback = _discordant_pairs_numpy
dominance_codes_fallback = _dominance_codes_numpy
perfect_matching_fallback = _perfect_matching_loop
birkhoff_fallback = _birkhoff_numpy

if USE_NUMBA:
    discordant_pairs = discordant_pairs_jit
    dominance_codes = dominance_codes_jit
    perfect_matching = perfect_matching_jit
    birkhoff = birkhoff_jit
else:
    discordant_pairs = discordant_pairs_fallback
    dominance_codes = dominance_codes_fallback
    perfect_matching = perfect_matching_fallback
    birkhoff = birkhoff_fallback


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
