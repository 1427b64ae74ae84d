"""Fuzzy rankings: validation, similarity, dominance ordering, entropy, aggregation."""

from ._kernels import backend
from .aggregate import group_ranking, mean
from .core import (
    ROW,
    STRICT,
    CrispRanking,
    FuzzyRanking,
    Labels,
    PenaltyMatrix,
    Tolerance,
    as_matrix,
    birkhoff_decompose,
    check_fuzzy,
    check_penalty,
    crisp_from_matrix,
    crisp_from_order,
    default_tolerance,
    identity,
    penalty_from_gaps,
    product,
    uniform,
    validate_fuzzy,
    validate_penalty,
)
from .errors import FuzzyRankError, ParseError, ValidationError, Violation
from .indecisiveness import (
    dm_weights,
    entropy,
    ind,
    indecisiveness_report,
    index_of_indecisiveness,
)
from .io import parse_matrix_file, serialize
from .ordering import Dominance, cumulative, dominance_report, dominates
from .similarity import (
    difference,
    dissimilarity,
    kendall_tau,
    max_dissimilarity,
    similarity,
)

__version__ = "0.1.0"

__all__ = [
    "ROW", "STRICT", "CrispRanking", "Dominance", "FuzzyRankError", "FuzzyRanking",
    "Labels", "ParseError", "PenaltyMatrix", "Tolerance", "ValidationError", "Violation",
    "as_matrix", "backend", "birkhoff_decompose", "check_fuzzy", "check_penalty",
    "crisp_from_matrix", "crisp_from_order", "cumulative", "default_tolerance",
    "difference", "dissimilarity", "dm_weights", "dominance_report", "dominates",
    "entropy", "group_ranking", "identity", "ind", "indecisiveness_report",
    "index_of_indecisiveness", "kendall_tau", "max_dissimilarity", "mean",
    "parse_matrix_file", "penalty_from_gaps", "product", "serialize", "similarity",
    "uniform", "validate_fuzzy", "validate_penalty",
]
