"""Worked-example matrices and the reference values published with them.

Some published values cannot be reproduced from the defining formulas.  The
CLI looks inputs up here and attaches a note whenever it prints one of those
quantities, so the output never silently disagrees with the reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LABELS4 = ("A", "B", "C", "D")

PENALTY = np.array([
    [0.0, 0.5, 0.8, 1.0],
    [0.5, 0.0, 0.3, 0.5],
    [0.8, 0.3, 0.0, 0.2],
    [1.0, 0.5, 0.2, 0.0],
])
PENALTY_GAPS = (0.5, 0.3, 0.2)

TIED_TOP_PAIR = np.array([
    [0.5, 0.5, 0, 0],
    [0.5, 0.5, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
], dtype=float)

LEANING_TOP_PAIR = np.array([
    [0.7, 0.3, 0, 0],
    [0.3, 0.7, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
], dtype=float)

ORDERING_EXAMPLE = np.array([
    [0.30, 0.5, 0.20, 0],
    [0.25, 0.25, 0.5, 0],
    [0.25, 0.25, 0, 0.5],
    [0.25, 0, 0.25, 0.5],
])
ORDERING_EXAMPLE_CUMULATIVE = np.array([
    [0.30, 0.80, 1, 1],
    [0.25, 0.5, 1, 1],
    [0.25, 0.5, 0.5, 1],
    [0.25, 0.25, 0.5, 1],
])

EXPERT_1 = np.array([
    [0.60, 0.30, 0.10, 0],
    [0.30, 0.30, 0.20, 0.20],
    [0.10, 0.30, 0.40, 0.20],
    [0, 0.10, 0.30, 0.60],
])
EXPERT_2 = np.array([
    [0.40, 0.30, 0.20, 0.10],
    [0.30, 0.25, 0.25, 0.20],
    [0.20, 0.25, 0.30, 0.25],
    [0.10, 0.20, 0.25, 0.45],
])
EXPERT_DIFFERENCE = np.array([
    [0.20, 0, 0.10, 0.10],
    [0, 0.05, 0.05, 0],
    [0.10, 0.05, 0.10, 0.05],
    [0.10, 0.10, 0.05, 0.15],
])

# the second panel member puts two objects in position 3 and none in 4
PANEL = tuple(np.array(m, dtype=float) for m in (
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 1, 0]],
    [[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
    [[0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
))
PANEL_MEAN = np.array([
    [0.25, 0.50, 0.25, 0],
    [0.25, 0.25, 0.50, 0],
    [0.25, 0.25, 0.25, 0.25],
    [0.25, 0, 0.25, 0.50],
])
PANEL_MEAN_CUMULATIVE = np.array([
    [0.25, 0.75, 1, 1],
    [0.25, 0.50, 1, 1],
    [0.25, 0.50, 0.75, 1],
    [0.25, 0.25, 0.5, 1],
])

LABELS5 = ("A", "B", "C", "D", "E")
# best-to-worst orders; FIVE_R3 swaps both the top pair and the bottom pair of
# FIVE_R1, FIVE_R3_ALT only the bottom pair (see README, "Reference data")
FIVE_R1 = ("A", "B", "C", "D", "E")
FIVE_R2 = ("B", "A", "C", "D", "E")
FIVE_R3 = ("B", "A", "C", "E", "D")
FIVE_R3_ALT = ("A", "B", "C", "E", "D")


@dataclass(frozen=True)
class Discrepancy:
    quantity: str
    computed: float
    reference: float
    note: str

    def as_dict(self) -> dict:
        return {"quantity": self.quantity, "computed": self.computed,
                "reference": self.reference, "note": self.note}

    def __str__(self) -> str:
        return (f"note: {self.quantity} computed {self.computed:.6g}, "
                f"reference example reports {self.reference:.6g}; {self.note}")


def same_matrix(a, b, atol: float = 1e-12) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a.shape == b.shape and bool(np.allclose(a, b, rtol=0.0, atol=atol))


def similarity_discrepancies(a, b, penalty, dis, dis_max, sim) -> list[Discrepancy]:
    """Notes for the two-expert similarity example, in either argument order."""
    pair = same_matrix(a, EXPERT_1) and same_matrix(b, EXPERT_2) or (
        same_matrix(a, EXPERT_2) and same_matrix(b, EXPERT_1))
    if not (pair and same_matrix(penalty, PENALTY)):
        return []
    note = "the defining half-sum formulas are applied literally"
    return [
        Discrepancy("DIS", dis, 0.275, note),
        Discrepancy("DIS_max", dis_max, 2.3, note + " (2.3 equals p12+p13+p14)"),
        Discrepancy("SIM", sim, 0.880, note),
    ]


def entropy_discrepancies(f, ii) -> list[Discrepancy]:
    if same_matrix(f, EXPERT_2):
        return [Discrepancy("II", ii, 0.871,
                            "row entropies recomputed directly; the ratio does not depend on the log base")]
    return []


def tau_discrepancies(order_a, order_b, tau) -> list[Discrepancy]:
    pair = {tuple(order_a), tuple(order_b)}
    if pair == {FIVE_R2, FIVE_R3_ALT}:
        return [Discrepancy("tau", tau, 0.8,
                            "this R3 reading differs from R2 in two pairs; the reference "
                            "value holds for R3 = B,A,C,E,D")]
    return []
