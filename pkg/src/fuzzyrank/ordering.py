"""Ordering the objects of a fuzzy ranking by cumulative dominance.

Object ``r`` dominates ``s`` when its cumulative membership is at least that
of ``s`` at every position prefix and strictly higher at one prefix or more.
Equal everywhere is a tie; each higher somewhere is incomparable.  Ranks are
``1 + (number of objects that dominate r)``, so incomparable objects may share
a rank and the result is in general a partial order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Labels, Ranking, Tolerance, _tol, as_matrix
from .errors import SameObject


class Dominance(enum.Enum):
    DOMINATES = _kernels.DOMINATES
    DOMINATED_BY = _kernels.DOMINATED
    TIED = _kernels.TIED
    INCOMPARABLE = _kernels.INCOMPARABLE

    def flip(self) -> "Dominance":
        if self is Dominance.DOMINATES:
            return Dominance.DOMINATED_BY
        if self is Dominance.DOMINATED_BY:
            return Dominance.DOMINATES
        return self

    @property
    def symbol(self) -> str:
        return {"DOMINATES": ">", "DOMINATED_BY": "<", "TIED": "=", "INCOMPARABLE": "?"}[self.name]


@dataclass(frozen=True, eq=False)
class CumulativeMatrix:
    labels: Labels
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class DominanceReport:
    labels: Labels
    codes: np.ndarray  # int8, see _kernels for the code values
    ranks: dict[str, int]
    tie_groups: list[tuple[str, ...]]
    incomparable: list[tuple[str, str]]

    def outcome(self, r: str, s: str) -> Dominance:
        return Dominance(int(self.codes[self.labels.index(r), self.labels.index(s)]))

    @property
    def pairwise(self) -> dict[tuple[str, str], Dominance]:
        out = {}
        for i, r in enumerate(self.labels):
            for j, s in enumerate(self.labels):
                if i != j:
                    out[r, s] = Dominance(int(self.codes[i, j]))
        return out

    def dominators(self, r: str) -> list[str]:
        i = self.labels.index(r)
        return [self.labels[j] for j in np.nonzero(self.codes[:, i] == _kernels.DOMINATES)[0]]

    def ranking(self) -> list[tuple[int, str]]:
        """``(rank, label)`` sorted by rank, label order within a rank."""
        order = sorted(range(len(self.labels)), key=lambda i: (self.ranks[self.labels[i]], i))
        return [(self.ranks[self.labels[i]], self.labels[i]) for i in order]

    @property
    def is_total(self) -> bool:
        return not self.tie_groups and not self.incomparable


def cumulative(f: Ranking) -> CumulativeMatrix:
    """Row-wise prefix sums over positions."""
    h = np.cumsum(as_matrix(f), axis=1)
    h.setflags(write=False)
    return CumulativeMatrix(f.labels, h)


def _codes(f: Ranking, tol: Tolerance) -> np.ndarray:
    h = np.ascontiguousarray(cumulative(f).entries)
    return np.asarray(_kernels.dominance_codes(h, tol.eps_val))


def dominates(f: Ranking, r: str, s: str, tol: Tolerance | None = None) -> Dominance:
    """Outcome of comparing object ``r`` against ``s``."""
    tol = _tol(tol)
    i, j = f.labels.index(r), f.labels.index(s)
    if i == j:
        raise SameObject(f"cannot compare {r!r} with itself")
    h = cumulative(f).entries
    pair = np.ascontiguousarray(h[[i, j]])
    return Dominance(int(_kernels.dominance_codes(pair, tol.eps_val)[0, 1]))


def dominance_report(f: Ranking, tol: Tolerance | None = None) -> DominanceReport:
    tol = _tol(tol)
    codes = _codes(f, tol)
    codes.setflags(write=False)
    labels = f.labels
    n = len(labels)
    dominated_count = (codes == _kernels.DOMINATED).sum(axis=1)
    ranks = {labels[i]: 1 + int(dominated_count[i]) for i in range(n)}

    # ties within eps need not be transitive; group by connected components
    group = list(range(n))

    def find(x):
        while group[x] != x:
            group[x] = group[group[x]]
            x = group[x]
        return x

    incomparable = []
    for i in range(n):
        for j in range(i + 1, n):
            if codes[i, j] == _kernels.TIED:
                a, b = find(i), find(j)
                group[max(a, b)] = min(a, b)
            elif codes[i, j] == _kernels.INCOMPARABLE:
                incomparable.append((labels[i], labels[j]))
    members: dict[int, list[str]] = {}
    for i in range(n):
        members.setdefault(find(i), []).append(labels[i])
    tie_groups = [tuple(m) for _, m in sorted(members.items()) if len(m) > 1]
    return DominanceReport(labels, codes, ranks, tie_groups, incomparable)
