import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_row_stochastic
from fuzzyrank import reference as ref
from fuzzyrank.core import (
    CrispRanking,
    Labels,
    identity,
    penalty_from_gaps,
    validate_fuzzy,
    validate_penalty,
    crisp_from_order,
)
from fuzzyrank.errors import DegeneratePenalty, DimensionMismatch, LabelMismatch, SingleObject
from fuzzyrank.similarity import (
    concordance,
    difference,
    dissimilarity,
    kendall_tau,
    max_dissimilarity,
    similarity,
)

P = validate_penalty(ref.PENALTY)


def five(order):
    return crisp_from_order(ref.LABELS5, order)


def fuzzy4(m):
    return validate_fuzzy(m, "row", labels=ref.LABELS4)


# independent oracles: plain Python over the best-to-worst lists / nested lists

def tau_oracle(order_a, order_b):
    n = len(order_a)
    nc = nd = 0
    for x, y in itertools.combinations(order_a, 2):
        same = (order_a.index(x) < order_a.index(y)) == (order_b.index(x) < order_b.index(y))
        nc += same
        nd += not same
    return 2 * (nc - nd) / (n * (n - 1))


def dis_oracle(a, b, p):
    a, b, p = np.asarray(a).tolist(), np.asarray(b).tolist(), np.asarray(p).tolist()
    total = 0.0
    for i in range(len(a)):
        for j in range(len(a)):
            total += p[i][j] * abs(a[i][j] - b[i][j])
    return total / 2


def dis_max_oracle(p):
    p = np.asarray(p).tolist()
    return sum(p[i][j] for i in range(len(p)) for j in range(i + 1, len(p))) / 2


class TestKendallTau:
    def test_top_swap(self):
        assert kendall_tau(five(ref.FIVE_R1), five(ref.FIVE_R2)) == 0.8

    def test_bottom_swap(self):
        assert kendall_tau(five(ref.FIVE_R2), five(ref.FIVE_R3)) == 0.8

    def test_both_swaps(self):
        assert tau_oracle(ref.FIVE_R1, ref.FIVE_R3) == 0.6
        assert kendall_tau(five(ref.FIVE_R1), five(ref.FIVE_R3)) == 0.6

    def test_alternative_third_ranking(self):
        # the other reading of the third ranking differs from R2 in two pairs
        assert kendall_tau(five(ref.FIVE_R2), five(ref.FIVE_R3_ALT)) == 0.6
        assert kendall_tau(five(ref.FIVE_R1), five(ref.FIVE_R3_ALT)) == 0.8

    def test_identical(self):
        r = five(ref.FIVE_R2)
        assert kendall_tau(r, r) == 1.0

    def test_concordance_counts(self):
        assert concordance(five(ref.FIVE_R1), five(ref.FIVE_R2)) == (9, 1)

    def test_single_object(self):
        r = identity(["A"])
        with pytest.raises(SingleObject):
            kendall_tau(r, r)

    def test_label_mismatch(self):
        with pytest.raises(LabelMismatch):
            kendall_tau(identity(["A", "B"]), identity(["A", "C"]))
        with pytest.raises(DimensionMismatch):
            kendall_tau(identity(["A", "B"]), identity(["A", "B", "C"]))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive_against_oracle(self, n):
        labels = Labels.default(n)
        perms = [CrispRanking(labels, p) for p in itertools.permutations(range(n))]
        for a in perms:
            for b in perms:
                t = kendall_tau(a, b)
                assert t == pytest.approx(tau_oracle(a.order, b.order), abs=0)
                assert t == kendall_tau(b, a)
            assert kendall_tau(a, a.reversed()) == -1.0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_adjacent_transposition_moves_by_one_pair(self, n):
        labels = Labels.default(n)
        for perm in itertools.permutations(range(n)):
            a = CrispRanking(labels, perm)
            nc, nd = concordance(identity(labels), a)
            for k in range(n - 1):
                order = list(a.order)
                order[k], order[k + 1] = order[k + 1], order[k]
                nc2, nd2 = concordance(identity(labels), crisp_from_order(labels, order))
                assert abs((nc2 - nd2) - (nc - nd)) == 2


class TestDifference:
    def test_expert_pair(self):
        d = difference(fuzzy4(ref.EXPERT_1), fuzzy4(ref.EXPERT_2))
        np.testing.assert_allclose(d.entries, ref.EXPERT_DIFFERENCE, rtol=0, atol=1e-12)

    def test_self_is_zero(self):
        f = fuzzy4(ref.EXPERT_1)
        assert not difference(f, f).entries.any()

    def test_swap_two(self):
        swap = crisp_from_order(["A", "B"], ["B", "A"])
        np.testing.assert_array_equal(difference(identity(["A", "B"]), swap).entries, np.ones((2, 2)))

    def test_crisp_and_fuzzy_mix(self):
        r = identity(ref.LABELS4)
        d = difference(r, fuzzy4(ref.TIED_TOP_PAIR))
        np.testing.assert_array_equal(d.entries[:2, :2], 0.5)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_symmetric_and_triangle(self, n, seed):
        rng = np.random.default_rng(seed)
        labels = Labels.default(n)
        f1, f2, f3 = (validate_fuzzy(random_row_stochastic(rng, n), "row", labels=labels)
                      for _ in range(3))
        d12 = difference(f1, f2).entries
        np.testing.assert_array_equal(d12, difference(f2, f1).entries)
        assert np.all(difference(f1, f3).entries <= d12 + difference(f2, f3).entries + 1e-15)
        assert np.all((d12 >= 0) & (d12 <= 1))


class TestDissimilarity:
    def test_identical_is_zero(self):
        f = fuzzy4(ref.EXPERT_2)
        assert dissimilarity(f, f, P) == 0.0

    def test_expert_pair(self):
        expected = dis_oracle(ref.EXPERT_1, ref.EXPERT_2, ref.PENALTY)
        assert expected == pytest.approx(0.23, abs=1e-12)
        assert dissimilarity(fuzzy4(ref.EXPERT_1), fuzzy4(ref.EXPERT_2), P) == pytest.approx(expected, abs=1e-12)

    def test_identity_vs_reversal(self):
        r = identity(ref.LABELS4)
        # unit cells on both diagonals; p14 + p23 + p32 + p41 = 2.6
        assert dissimilarity(r, r.reversed(), P) == pytest.approx(1.3, abs=1e-12)

    def test_dimension_mismatch(self):
        r = identity(ref.LABELS5)
        with pytest.raises(DimensionMismatch):
            dissimilarity(r, r.reversed(), P)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 2**32 - 1))
    def test_symmetric_nonnegative_against_oracle(self, n, seed):
        rng = np.random.default_rng(seed)
        labels = Labels.default(n)
        g = rng.random(n - 1)
        p = penalty_from_gaps(g / g.sum())
        a = validate_fuzzy(random_row_stochastic(rng, n), "row", labels=labels)
        b = validate_fuzzy(random_row_stochastic(rng, n), "row", labels=labels)
        d = dissimilarity(a, b, p)
        assert d >= 0
        assert d == dissimilarity(b, a, p)
        assert d == pytest.approx(dis_oracle(a.entries, b.entries, p.entries), abs=1e-12)

    def test_zero_only_for_equal_inputs(self, rng):
        p = penalty_from_gaps([0.2, 0.3, 0.1, 0.4])
        labels = Labels.default(5)
        for _ in range(100):
            a = validate_fuzzy(random_row_stochastic(rng, 5), "row", labels=labels)
            b = a if rng.random() < 0.3 else validate_fuzzy(
                random_row_stochastic(rng, 5), "row", labels=labels)
            off_diag_diff = difference(a, b).entries[~np.eye(5, dtype=bool)]
            assert (dissimilarity(a, b, p) == 0) == (not off_diag_diff.any())


class TestMaxDissimilarity:
    def test_reference_penalty(self):
        assert dis_max_oracle(ref.PENALTY) == pytest.approx(1.65, abs=1e-12)
        assert max_dissimilarity(P) == pytest.approx(1.65, abs=1e-12)

    def test_two_by_two(self):
        assert max_dissimilarity(penalty_from_gaps([1])) == 0.5

    def test_degenerate(self):
        with pytest.raises(DegeneratePenalty):
            max_dissimilarity(penalty_from_gaps([0, 0, 0]))
        with pytest.raises(DegeneratePenalty):
            max_dissimilarity(penalty_from_gaps([]))


class TestSimilarity:
    def test_identical(self):
        f = fuzzy4(ref.EXPERT_1)
        assert similarity(f, f, P).sim == 1.0

    def test_expert_pair(self):
        rep = similarity(fuzzy4(ref.EXPERT_1), fuzzy4(ref.EXPERT_2), P)
        assert rep.sim == 1 - rep.dis / rep.dis_max
        assert rep.sim == pytest.approx(1 - 0.23 / 1.65, abs=1e-12)
        assert rep.tau is None

    def test_identity_vs_reversal(self):
        r = identity(ref.LABELS4)
        rep = similarity(r, r.reversed(), P)
        assert rep.sim == pytest.approx(1 - 1.3 / 1.65, abs=1e-12)
        assert rep.tau == -1.0

    def test_literal_formula_can_leave_unit_interval(self):
        # DIS as a full-cell half-sum is not bounded by the upper-triangle DIS_max
        a = crisp_from_order(ref.LABELS4, ["C", "D", "A", "B"])
        b = crisp_from_order(ref.LABELS4, ["D", "C", "B", "A"])
        rep = similarity(a, b, P)
        assert rep.dis == pytest.approx(dis_oracle(a.matrix, b.matrix, ref.PENALTY), abs=1e-12)
        assert rep.dis == pytest.approx(2.6, abs=1e-12)
        assert rep.sim == pytest.approx(1 - 2.6 / 1.65, abs=1e-12)
        assert not rep.in_unit_interval

    def test_two_objects_swapped(self):
        p = penalty_from_gaps([1])
        rep = similarity(identity(["A", "B"]), crisp_from_order(["A", "B"], ["B", "A"]), p)
        assert (rep.dis, rep.dis_max, rep.sim) == (1.0, 0.5, -1.0)

    def test_residue_clamped(self):
        f = fuzzy4(ref.EXPERT_1)
        g = fuzzy4(ref.EXPERT_1 + np.array([[1e-17, -1e-17, 0, 0]] + [[0, 0, 0, 0]] * 3))
        assert 0.0 <= similarity(f, g, P).sim <= 1.0
