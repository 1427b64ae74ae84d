"""Exception hierarchy and the violation record used by the validators."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One failed constraint found while validating a matrix.

    ``row`` and ``col`` are zero-based; ``None`` means the constraint is not
    tied to that axis (a column-sum violation has no row, for instance).
    ``residual`` is the signed amount by which the constraint is missed.
    """

    kind: str
    row: int | None = None
    col: int | None = None
    residual: float = 0.0
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "row": self.row,
            "col": self.col,
            "residual": self.residual,
            "detail": self.detail,
        }

    def __str__(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row + 1}")
        if self.col is not None:
            where.append(f"column {self.col + 1}")
        loc = ", ".join(where) or "matrix"
        text = f"{self.kind} at {loc} (residual {self.residual:.6g})"
        return f"{text}: {self.detail}" if self.detail else text


class FuzzyRankError(ValueError):
    """Base class for every error raised by this package."""


class ValidationError(FuzzyRankError):
    """A matrix failed one or more structural constraints."""

    def __init__(self, violations, what: str = "matrix"):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:8])
        more = len(self.violations) - 8
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(f"invalid {what}: {lines}")


class ParseError(FuzzyRankError):
    """A matrix file could not be read. ``line``/``column`` are 1-based."""

    def __init__(self, message: str, path=None, line: int | None = None,
                 column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        loc = str(path) if path is not None else "<input>"
        if line is not None:
            loc += f":{line}"
            if column is not None:
                loc += f":{column}"
        super().__init__(f"{loc}: {message}")


class DuplicateLabel(FuzzyRankError):
    pass


class UnknownLabel(FuzzyRankError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


class LengthMismatch(FuzzyRankError):
    pass


class DimensionMismatch(FuzzyRankError):
    pass


class LabelMismatch(FuzzyRankError):
    pass


class ModeMismatch(FuzzyRankError):
    pass


class NegativeGap(FuzzyRankError):
    pass


class RangeOverflow(FuzzyRankError):
    pass


class NotDoublyStochastic(ValidationError):
    pass


class NoPerfectMatching(FuzzyRankError):
    pass


class SingleObject(FuzzyRankError):
    pass


class SameObject(FuzzyRankError):
    pass


class DegeneratePenalty(FuzzyRankError):
    pass


class NotADistribution(FuzzyRankError):
    pass


class EmptyInput(FuzzyRankError):
    pass


class WeightLengthMismatch(FuzzyRankError):
    pass


class WeightNotNormalized(FuzzyRankError):
    pass


class StochasticityWarning(UserWarning):
    """Input accepted in row-stochastic mode although it is not doubly stochastic."""

    def __init__(self, message: str, violations=(), source: int | None = None):
        super().__init__(message)
        self.violations = list(violations)
        self.source = source
