"""Kendall's tau and penalty-weighted (dis)similarity of two rankings.

Crisp inputs are handled through their permutation matrices, so the same
code serves crisp and fuzzy rankings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import CrispRanking, Labels, PenaltyMatrix, Ranking, Tolerance, _tol, as_matrix
from .errors import DegeneratePenalty, DimensionMismatch, LabelMismatch, SingleObject


@dataclass(frozen=True, eq=False)
class DifferenceMatrix:
    labels: Labels
    entries: np.ndarray


@dataclass(frozen=True)
class SimilarityReport:
    dis: float
    dis_max: float
    sim: float
    tau: float | None = None

    @property
    def in_unit_interval(self) -> bool:
        return 0.0 <= self.sim <= 1.0

    def as_dict(self) -> dict:
        return {"dis": self.dis, "dis_max": self.dis_max, "sim": self.sim, "tau": self.tau}


def _same_objects(a: Ranking, b: Ranking) -> None:
    if a.labels != b.labels:
        if len(a.labels) != len(b.labels):
            raise DimensionMismatch(f"rankings have {len(a.labels)} and {len(b.labels)} objects")
        raise LabelMismatch(f"rankings are over different objects: "
                            f"{list(a.labels)} vs {list(b.labels)}")


def concordance(a: CrispRanking, b: CrispRanking) -> tuple[int, int]:
    """``(n_c, n_d)``: concordant and discordant unordered object pairs."""
    _same_objects(a, b)
    n = a.n
    nd = int(_kernels.discordant_pairs(np.asarray(a.positions, dtype=np.int64),
                                       np.asarray(b.positions, dtype=np.int64)))
    return n * (n - 1) // 2 - nd, nd


def kendall_tau(a: CrispRanking, b: CrispRanking) -> float:
    """``2 (n_c - n_d) / (n (n - 1))`` over all object pairs."""
    if a.n < 2:
        raise SingleObject("Kendall's tau is undefined for a single object")
    nc, nd = concordance(a, b)
    return 2 * (nc - nd) / (a.n * (a.n - 1))


def difference(a: Ranking, b: Ranking) -> DifferenceMatrix:
    """Entrywise absolute difference of the two ranking matrices."""
    _same_objects(a, b)
    d = np.abs(as_matrix(a) - as_matrix(b))
    d.setflags(write=False)
    return DifferenceMatrix(a.labels, d)


def _check_penalty_size(p: PenaltyMatrix, n: int) -> None:
    if p.n != n:
        raise DimensionMismatch(f"penalty matrix is {p.n}x{p.n}, rankings have {n} objects")


def dissimilarity(a: Ranking, b: Ranking, penalty: PenaltyMatrix) -> float:
    """Half the sum over every cell of ``penalty * |A - B|``."""
    d = difference(a, b).entries
    _check_penalty_size(penalty, d.shape[0])
    return 0.5 * float(np.sum(penalty.entries * d))


def max_dissimilarity(penalty: PenaltyMatrix) -> float:
    """Half the sum of the strictly upper triangle of ``penalty``."""
    if penalty.n < 2:
        raise DegeneratePenalty("a 1x1 penalty matrix has no interchanges to penalise")
    upper = penalty.entries[np.triu_indices(penalty.n, 1)]
    if not np.any(upper > 0.0):
        raise DegeneratePenalty("penalty matrix is all zero; similarity is undefined")
    return 0.5 * float(upper.sum())


def similarity(a: Ranking, b: Ranking, penalty: PenaltyMatrix,
               tol: Tolerance | None = None) -> SimilarityReport:
    """``1 - DIS / DIS_max`` together with its parts.

    Only rounding residue below ``tol.eps_val`` is clamped back into
    ``[0, 1]``.  Larger excursions are reported as computed; the report's
    ``in_unit_interval`` flag exposes them.
    """
    tol = _tol(tol)
    dis = dissimilarity(a, b, penalty)
    dis_max = max_dissimilarity(penalty)
    sim = 1.0 - dis / dis_max
    if -tol.eps_val < sim < 0.0:
        sim = 0.0
    elif 1.0 < sim < 1.0 + tol.eps_val:
        sim = 1.0
    tau = None
    if isinstance(a, CrispRanking) and isinstance(b, CrispRanking) and a.n >= 2:
        tau = kendall_tau(a, b)
    return SimilarityReport(dis, dis_max, sim, tau)
