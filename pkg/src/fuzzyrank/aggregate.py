"""Group rankings by (weighted) arithmetic mean."""

from __future__ import annotations

import warnings
from typing import Sequence

import numpy as np

from .core import (
    ROW,
    STRICT,
    FuzzyRanking,
    Ranking,
    Tolerance,
    _tol,
    as_matrix,
    check_fuzzy,
    validate_fuzzy,
)
from .errors import (
    EmptyInput,
    LabelMismatch,
    StochasticityWarning,
    WeightLengthMismatch,
    WeightNotNormalized,
)
from .indecisiveness import dm_weights


def _weights(weights, m: int, tol: Tolerance) -> np.ndarray:
    if weights is None:
        return np.full(m, 1.0 / m)
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.size != m:
        raise WeightLengthMismatch(f"{w.size} weights for {m} rankings")
    if not np.isfinite(w).all() or np.any(w < 0.0):
        raise WeightNotNormalized(f"weights must be nonnegative: {w.tolist()}")
    if abs(w.sum() - 1.0) > tol.eps_sum:
        raise WeightNotNormalized(f"weights sum to {w.sum():.12g}, not 1")
    return w


def mean(rankings: Sequence[Ranking], weights=None, tol: Tolerance | None = None) -> FuzzyRanking:
    """Entrywise weighted mean of rankings over the same objects.

    The result is strict when every input is doubly stochastic.  Inputs that
    only have unit row sums are accepted; each one triggers a
    :class:`StochasticityWarning` naming the offending columns, and the
    result is returned in row mode.
    """
    tol = _tol(tol)
    rankings = list(rankings)
    if not rankings:
        raise EmptyInput("no rankings to aggregate")
    labels = rankings[0].labels
    for k, r in enumerate(rankings[1:], start=2):
        if r.labels != labels:
            raise LabelMismatch(f"ranking {k} is over {list(r.labels)}, expected {list(labels)}")
    w = _weights(weights, len(rankings), tol)

    mode = STRICT
    for k, r in enumerate(rankings):
        problems = check_fuzzy(as_matrix(r), STRICT, tol)
        if problems:
            mode = ROW
            cols = ", ".join(str(v.col + 1) for v in problems if v.col is not None)
            warnings.warn(StochasticityWarning(
                f"ranking {k + 1} is not doubly stochastic (columns {cols}); "
                "aggregated in row-stochastic mode", problems, k), stacklevel=2)

    # fixed accumulation order keeps results bit-reproducible
    acc = np.zeros((len(labels), len(labels)))
    for wk, r in zip(w, rankings):
        acc += wk * as_matrix(r)
    return validate_fuzzy(acc, mode, tol.scaled(len(rankings)), labels)


def group_ranking(rankings: Sequence[Ranking], tol: Tolerance | None = None,
                  **weight_kwargs) -> tuple[FuzzyRanking, np.ndarray]:
    """Mean weighted by each ranking's decisiveness; returns ``(mean, weights)``."""
    w = dm_weights(rankings, **weight_kwargs)
    return mean(rankings, w, tol), w
