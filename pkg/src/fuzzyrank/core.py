"""Crisp and fuzzy rankings, penalty matrices, and their validation.

A ranking of ``n`` objects is stored as an ``n x n`` matrix whose rows are
objects (in label order) and whose columns are positions ``1..n``.  Entry
``(i, j)`` is the membership of object ``i`` at position ``j``; for a crisp
ranking it is 0 or 1.

Positions are 1-based wherever they face the user (``position()``, the file
format, error messages) and 0-based internally.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from string import ascii_uppercase
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    FuzzyRankError,
    LengthMismatch,
    ModeMismatch,
    NegativeGap,
    NoPerfectMatching,
    NotDoublyStochastic,
    RangeOverflow,
    UnknownLabel,
    ValidationError,
    Violation,
)

STRICT = "strict"
ROW = "row"
_MODE_ALIASES = {
    "strict": STRICT,
    "doubly-stochastic": STRICT,
    "row": ROW,
    "row-stochastic": ROW,
}

TOL_ENV = "FUZZYRANK_TOL"
DEFAULT_EPS = 1e-9


def normalize_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode.strip().lower()]
    except (KeyError, AttributeError):
        raise FuzzyRankError(f"unknown validation mode {mode!r}; use 'strict' or 'row'") from None


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerances for the structural checks.

    ``eps_sum`` bounds row/column sum residuals, ``eps_val`` bounds entry range,
    additivity and equality comparisons.
    """

    eps_sum: float = DEFAULT_EPS
    eps_val: float = DEFAULT_EPS

    def __post_init__(self):
        for name in ("eps_sum", "eps_val"):
            v = getattr(self, name)
            if not (0.0 < v <= 1e-3):
                raise FuzzyRankError(f"{name} must be in (0, 1e-3], got {v!r}")

    @classmethod
    def uniform(cls, eps: float) -> "Tolerance":
        return cls(eps, eps)

    def scaled(self, factor: float) -> "Tolerance":
        return Tolerance(min(self.eps_sum * factor, 1e-3), min(self.eps_val * factor, 1e-3))


def default_tolerance() -> Tolerance:
    """Default tolerance, overridable through ``FUZZYRANK_TOL``."""
    raw = os.environ.get(TOL_ENV)
    if raw is None or not raw.strip():
        return Tolerance()
    try:
        eps = float(raw)
    except ValueError:
        raise FuzzyRankError(f"{TOL_ENV}={raw!r} is not a number") from None
    return Tolerance.uniform(eps)


def _tol(tol: Tolerance | None) -> Tolerance:
    return default_tolerance() if tol is None else tol


# -- labels ----------------------------------------------------------------

@dataclass(frozen=True)
class Labels:
    """Ordered, distinct, non-empty object names."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(str(x).strip() for x in self.names)
        if not names:
            raise LengthMismatch("at least one object label is required")
        if any(not x for x in names):
            raise FuzzyRankError("object labels must be non-empty")
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateLabel(f"duplicate object label {name!r}")
            seen.add(name)
        object.__setattr__(self, "names", names)

    @classmethod
    def of(cls, labels: "LabelsLike") -> "Labels":
        if isinstance(labels, Labels):
            return labels
        if isinstance(labels, str):
            raise FuzzyRankError("labels must be a sequence of names, not a single string")
        return cls(tuple(labels))

    @classmethod
    def default(cls, n: int) -> "Labels":
        if n < 1:
            raise LengthMismatch("at least one object label is required")
        if n <= len(ascii_uppercase):
            return cls(tuple(ascii_uppercase[:n]))
        return cls(tuple(f"o{i + 1}" for i in range(n)))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, label: str) -> int:
        try:
            return self._index[str(label).strip()]
        except KeyError:
            raise UnknownLabel(f"unknown object label {label!r}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __getitem__(self, i: int) -> str:
        return self.names[i]


LabelsLike = Union[Labels, Sequence[str]]


def _readonly(a) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


# -- ranking types --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CrispRanking:
    """A strict total order of the objects; ``positions[i]`` is 0-based."""

    labels: Labels
    positions: tuple[int, ...]

    def __post_init__(self):
        positions = tuple(int(p) for p in self.positions)
        n = len(self.labels)
        if len(positions) != n:
            raise LengthMismatch(f"{len(positions)} positions for {n} objects")
        if sorted(positions) != list(range(n)):
            raise FuzzyRankError(f"positions {positions} are not a permutation of 0..{n - 1}")
        object.__setattr__(self, "positions", positions)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n))
        m[np.arange(self.n), self.positions] = 1.0
        m.setflags(write=False)
        return m

    @property
    def entries(self) -> np.ndarray:
        return self.matrix

    def position(self, label: str) -> int:
        """1-based position of ``label``."""
        return self.positions[self.labels.index(label)] + 1

    @property
    def order(self) -> tuple[str, ...]:
        """Labels from best to worst."""
        out = [""] * self.n
        for obj, pos in enumerate(self.positions):
            out[pos] = self.labels[obj]
        return tuple(out)

    def reversed(self) -> "CrispRanking":
        return CrispRanking(self.labels, tuple(self.n - 1 - p for p in self.positions))

    def to_fuzzy(self) -> "FuzzyRanking":
        return FuzzyRanking(self.labels, self.matrix, STRICT)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrispRanking):
            return NotImplemented
        return self.labels == other.labels and self.positions == other.positions

    def __hash__(self) -> int:
        return hash((self.labels, self.positions))

    def __repr__(self) -> str:
        return f"CrispRanking({', '.join(self.order)})"


@dataclass(frozen=True, eq=False)
class FuzzyRanking:
    """Membership matrix of objects (rows) over positions (columns).

    Build through :func:`validate_fuzzy` to get the invariants checked; the
    constructor only fixes shape and makes ``entries`` read-only.
    """

    labels: Labels
    entries: np.ndarray
    mode: str = STRICT

    def __post_init__(self):
        entries = _readonly(self.entries)
        n = len(self.labels)
        if entries.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n} matrix, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "mode", normalize_mode(self.mode))

    @property
    def n(self) -> int:
        return len(self.labels)

    def row(self, label: str) -> np.ndarray:
        return self.entries[self.labels.index(label)]

    def __repr__(self) -> str:
        return f"FuzzyRanking(labels={list(self.labels)}, mode={self.mode!r},\n{self.entries})"


@dataclass(frozen=True, eq=False)
class PenaltyMatrix:
    """Cost of interchanging ranking positions ``i`` and ``j``."""

    entries: np.ndarray
    gaps: tuple[float, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        entries = _readonly(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatch(f"penalty matrix must be square, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


Ranking = Union[CrispRanking, FuzzyRanking]


def as_matrix(r) -> np.ndarray:
    """Entry array of a ranking; plain arrays pass through as float64."""
    if isinstance(r, CrispRanking):
        return r.matrix
    if isinstance(r, FuzzyRanking):
        return r.entries
    return np.asarray(r, dtype=np.float64)


def identity(labels: LabelsLike) -> CrispRanking:
    labels = Labels.of(labels)
    return CrispRanking(labels, tuple(range(len(labels))))


def uniform(labels: LabelsLike) -> FuzzyRanking:
    labels = Labels.of(labels)
    n = len(labels)
    return FuzzyRanking(labels, np.full((n, n), 1.0 / n), STRICT)


# -- crisp construction ---------------------------------------------------------

def crisp_from_order(labels: LabelsLike, order: Iterable[str]) -> CrispRanking:
    """Crisp ranking placing ``order[k]`` at position ``k + 1``."""
    labels = Labels.of(labels)
    order = [str(x).strip() for x in order]
    if len(set(order)) != len(order):
        dup = next(x for x in order if order.count(x) > 1)
        raise DuplicateLabel(f"object {dup!r} appears more than once in the order")
    idx = [labels.index(x) for x in order]
    if len(order) != len(labels):
        raise LengthMismatch(f"order names {len(order)} objects, labels have {len(labels)}")
    positions = [0] * len(labels)
    for pos, obj in enumerate(idx):
        positions[obj] = pos
    return CrispRanking(labels, tuple(positions))


def check_crisp(entries) -> list[Violation]:
    a = np.asarray(entries, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        return [Violation("NonSquare", detail=f"shape {a.shape}")]
    out = []
    for i, j in zip(*np.nonzero((a != 0.0) & (a != 1.0))):
        out.append(Violation("NotBinary", int(i), int(j), float(a[i, j]),
                             "crisp entries must be 0 or 1"))
    for i, s in enumerate(a.sum(axis=1)):
        if s != 1.0:
            out.append(Violation("RowSumViolation", i, None, float(s - 1.0), f"sum {s:.6g}"))
    for j, s in enumerate(a.sum(axis=0)):
        if s != 1.0:
            out.append(Violation("ColumnSumViolation", None, j, float(s - 1.0), f"sum {s:.6g}"))
    return out


def crisp_from_matrix(labels: LabelsLike, entries) -> CrispRanking:
    """Crisp ranking from a 0/1 permutation matrix."""
    labels = Labels.of(labels)
    a = np.asarray(entries, dtype=np.float64)
    violations = check_crisp(a)
    if violations:
        raise ValidationError(violations, "crisp ranking")
    if a.shape[0] != len(labels):
        raise LengthMismatch(f"{a.shape[0]}x{a.shape[0]} matrix for {len(labels)} labels")
    return CrispRanking(labels, tuple(int(j) for j in a.argmax(axis=1)))


# -- fuzzy validation -----------------------------------------------------------

def check_fuzzy(entries, mode: str = STRICT, tol: Tolerance | None = None) -> list[Violation]:
    """Every violated fuzzy-ranking constraint; empty when the matrix is valid."""
    mode = normalize_mode(mode)
    tol = _tol(tol)
    a = np.asarray(entries, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        return [Violation("NonSquare", detail=f"shape {a.shape}")]
    if not np.isfinite(a).all():
        i, j = np.argwhere(~np.isfinite(a))[0]
        return [Violation("NonFinite", int(i), int(j), float("nan"))]
    out = []
    for i, j in zip(*np.nonzero(a < -tol.eps_val)):
        out.append(Violation("NegativeEntry", int(i), int(j), float(a[i, j])))
    for i, j in zip(*np.nonzero(a > 1.0 + tol.eps_val)):
        out.append(Violation("RangeViolation", int(i), int(j), float(a[i, j] - 1.0)))
    for i, s in enumerate(a.sum(axis=1)):
        if abs(s - 1.0) > tol.eps_sum:
            out.append(Violation("RowSumViolation", i, None, float(s - 1.0), f"sum {s:.6g}"))
    if mode == STRICT:
        for j, s in enumerate(a.sum(axis=0)):
            if abs(s - 1.0) > tol.eps_sum:
                out.append(Violation("ColumnSumViolation", None, j, float(s - 1.0), f"sum {s:.6g}"))
    return out


def validate_fuzzy(entries, mode: str = STRICT, tol: Tolerance | None = None,
                   labels: LabelsLike | None = None) -> FuzzyRanking:
    """Validate a membership matrix and wrap it as a :class:`FuzzyRanking`.

    ``strict`` requires a doubly stochastic matrix; ``row`` only requires
    unit row sums.  Raises :class:`ValidationError` listing every violation.
    """
    mode = normalize_mode(mode)
    violations = check_fuzzy(entries, mode, tol)
    if violations:
        raise ValidationError(violations, f"fuzzy ranking ({mode} mode)")
    a = np.asarray(entries, dtype=np.float64)
    labels = Labels.default(a.shape[0]) if labels is None else Labels.of(labels)
    if len(labels) != a.shape[0]:
        raise LengthMismatch(f"{len(labels)} labels for a {a.shape[0]}x{a.shape[0]} matrix")
    return FuzzyRanking(labels, a, mode)


def is_doubly_stochastic(r: Ranking, tol: Tolerance | None = None) -> bool:
    return not check_fuzzy(as_matrix(r), STRICT, tol)


# -- penalty matrices -----------------------------------------------------------

def penalty_from_gaps(gaps: Sequence[float], tol: Tolerance | None = None) -> PenaltyMatrix:
    """Path-additive penalty matrix from the ``n - 1`` adjacent-position gaps.

    ``p[i, j]`` is the sum of ``gaps[min(i, j):max(i, j)]``, accumulated left
    to right, so ``penalty_from_gaps([0.5, 0.3, 0.2])`` has ``p[0, 2] == 0.5 + 0.3``.
    """
    tol = _tol(tol)
    gaps = [float(g) for g in gaps]
    for k, g in enumerate(gaps):
        if not np.isfinite(g) or g < 0.0:
            raise NegativeGap(f"gap {k + 1} is {g!r}; gaps must be nonnegative")
    total = 0.0
    for g in gaps:
        total += g
    if total > 1.0 + tol.eps_val:
        raise RangeOverflow(f"gaps sum to {total:.6g}; the largest penalty would exceed 1")
    n = len(gaps) + 1
    p = np.zeros((n, n))
    for i in range(n):
        acc = 0.0
        for j in range(i + 1, n):
            acc += gaps[j - 1]
            p[i, j] = p[j, i] = acc
    return PenaltyMatrix(p, tuple(gaps))


def check_penalty(entries, tol: Tolerance | None = None) -> list[Violation]:
    tol = _tol(tol)
    p = np.asarray(entries, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.size == 0:
        return [Violation("NonSquare", detail=f"shape {p.shape}")]
    if not np.isfinite(p).all():
        i, j = np.argwhere(~np.isfinite(p))[0]
        return [Violation("NonFinite", int(i), int(j), float("nan"))]
    n = p.shape[0]
    out = []
    for i in range(n):
        if abs(p[i, i]) > tol.eps_val:
            out.append(Violation("DiagonalViolation", i, i, float(p[i, i])))
    for i in range(n):
        for j in range(i + 1, n):
            d = p[i, j] - p[j, i]
            if abs(d) > tol.eps_val:
                out.append(Violation("AsymmetryViolation", i, j, float(d),
                                     f"p[{i + 1},{j + 1}]={p[i, j]:.6g} vs p[{j + 1},{i + 1}]={p[j, i]:.6g}"))
    for i, j in zip(*np.nonzero((p < -tol.eps_val) | (p > 1.0 + tol.eps_val))):
        out.append(Violation("RangeViolation", int(i), int(j), float(p[i, j])))
    # additivity on the upper triangle only; asymmetry is reported above
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                d = p[i, j] + p[j, k] - p[i, k]
                if abs(d) > tol.eps_val:
                    out.append(Violation(
                        "AdditivityViolation", i, k, float(d),
                        f"p[{i + 1},{j + 1}] + p[{j + 1},{k + 1}] = {p[i, j] + p[j, k]:.6g}"
                        f" but p[{i + 1},{k + 1}] = {p[i, k]:.6g}"))
    return out


def validate_penalty(entries, tol: Tolerance | None = None) -> PenaltyMatrix:
    violations = check_penalty(entries, tol)
    if violations:
        raise ValidationError(violations, "penalty matrix")
    p = np.asarray(entries, dtype=np.float64)
    return PenaltyMatrix(p, tuple(float(p[i, i + 1]) for i in range(p.shape[0] - 1)))


# -- algebra -------------------------------------------------------------------

def product(f1: FuzzyRanking, f2: FuzzyRanking, tol: Tolerance | None = None) -> FuzzyRanking:
    """Matrix product of two doubly stochastic rankings (closed in strict mode)."""
    tol = _tol(tol)
    if f1.n != f2.n:
        raise DimensionMismatch(f"cannot multiply {f1.n}x{f1.n} by {f2.n}x{f2.n}")
    for name, f in (("first", f1), ("second", f2)):
        if f.mode != STRICT:
            raise ModeMismatch(f"{name} factor is in {f.mode!r} mode; product needs strict rankings")
    c = f1.entries @ f2.entries
    # rounding in the product grows with n; keep the check meaningful
    return validate_fuzzy(c, STRICT, tol.scaled(f1.n), f1.labels)


def birkhoff_decompose(f: Ranking, tol: Tolerance | None = None
                       ) -> list[tuple[float, CrispRanking]]:
    """Convex combination of crisp rankings reproducing ``f``.

    Greedy: repeatedly take a permutation supported on the positive entries
    of the residual and subtract its smallest supported entry.  Entries at or
    below ``tol.eps_val`` count as zero.  Returns at most ``(n-1)**2 + 1``
    terms.
    """
    tol = _tol(tol)
    a = as_matrix(f)
    violations = check_fuzzy(a, STRICT, tol)
    if violations:
        raise NotDoublyStochastic(violations, "input to Birkhoff decomposition")
    coeffs, perms, status = _kernels.birkhoff(np.ascontiguousarray(a, dtype=np.float64), tol.eps_val)
    if status == _kernels.MATCH_NONE:
        raise NoPerfectMatching(
            f"residual after {len(coeffs)} terms has no perfect matching on its support")
    if status == _kernels.MATCH_TOO_MANY:
        raise NoPerfectMatching(f"decomposition did not terminate within {len(coeffs)} terms")
    return [(float(c), CrispRanking(f.labels, tuple(int(x) for x in p)))
            for c, p in zip(coeffs, perms)]
