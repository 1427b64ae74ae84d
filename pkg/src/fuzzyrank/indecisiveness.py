"""Entropy of fuzzy rankings and decision-maker weights derived from it.

All entropies are in bits.  A ranking's indecisiveness is the sum of its row
entropies; the index of indecisiveness divides by ``n log2 n``, the value for
the uniform ranking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import Ranking, Tolerance, _tol, as_matrix
from .errors import EmptyInput, LabelMismatch, NotADistribution, SingleObject

ZERO_CUTOFF = 1e-15


@dataclass(frozen=True)
class IndecisivenessReport:
    ind: float
    ind_max: float
    ii: float
    per_row: tuple[float, ...]

    def as_dict(self) -> dict:
        return {"ind": self.ind, "ind_max": self.ind_max, "ii": self.ii,
                "per_row": list(self.per_row)}


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > ZERO_CUTOFF]
    if p.size <= 1:
        return 0.0
    if np.all(p == p[0]):
        # uniform over the support: Hartley value, exact in floating point
        return math.log2(p.size)
    return float(-np.sum(p * np.log2(p)))


def entropy(dist: Sequence[float], tol: Tolerance | None = None) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    tol = _tol(tol)
    p = np.asarray(dist, dtype=np.float64).ravel()
    if p.size == 0:
        raise NotADistribution("empty distribution")
    if not np.isfinite(p).all() or np.any(p < -tol.eps_val) or np.any(p > 1.0 + tol.eps_val):
        raise NotADistribution(f"probabilities must lie in [0, 1]: {p.tolist()}")
    if abs(p.sum() - 1.0) > tol.eps_sum:
        raise NotADistribution(f"probabilities sum to {p.sum():.6g}, not 1")
    return _entropy_bits(p)


def row_entropies(f: Ranking) -> np.ndarray:
    a = as_matrix(f)
    return np.array([_entropy_bits(row) for row in a])


def ind(f: Ranking) -> float:
    """Total entropy of the ranking's rows."""
    return math.fsum(row_entropies(f))


def ind_max(n: int) -> float:
    return n * math.log2(n) if n > 1 else 0.0


def index_of_indecisiveness(f: Ranking) -> float:
    """``IND / (n log2 n)``, in ``[0, 1]``.

    Computed as the mean of per-row ratios ``H_i / log2 n``, which is the same
    quantity but keeps uniform rows at exactly 1.
    """
    n = f.n
    if n < 2:
        raise SingleObject("index of indecisiveness needs at least two objects")
    ratios = row_entropies(f) / math.log2(n)
    return min(1.0, max(0.0, math.fsum(ratios) / n))


def indecisiveness_report(f: Ranking) -> IndecisivenessReport:
    rows = row_entropies(f)
    ii = index_of_indecisiveness(f) if f.n >= 2 else 0.0
    return IndecisivenessReport(math.fsum(rows), ind_max(f.n), ii, tuple(float(x) for x in rows))


def complement_rule(ii: np.ndarray) -> np.ndarray:
    """Raw weight ``1 - II``: fully decisive experts count most."""
    return 1.0 - ii


def dm_weights(rankings: Sequence[Ranking],
               rule: Callable[[np.ndarray], np.ndarray] = complement_rule) -> np.ndarray:
    """Normalised decision-maker weights from each ranking's indecisiveness.

    ``rule`` maps the vector of indices to raw nonnegative weights.  When the
    raw weights are all zero (every expert absolutely indecisive) the weights
    fall back to uniform.
    """
    rankings = list(rankings)
    if not rankings:
        raise EmptyInput("no rankings given")
    labels = rankings[0].labels
    for k, r in enumerate(rankings[1:], start=2):
        if r.labels != labels:
            raise LabelMismatch(f"ranking {k} is over {list(r.labels)}, expected {list(labels)}")
    ii = np.array([index_of_indecisiveness(r) for r in rankings])
    raw = np.clip(np.asarray(rule(ii), dtype=np.float64), 0.0, None)
    total = raw.sum()
    if total <= 0.0:
        return np.full(len(rankings), 1.0 / len(rankings))
    return raw / total
