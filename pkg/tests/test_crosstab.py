"""Contingency tables and the Pearson chi-square test."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from binomreg.crosstab import (
    CrossTab,
    DegenerateTableError,
    build_crosstab,
    chi_square_test,
)
from binomreg.design import Dataset, VariableSpec
from binomreg.special import chisq_sf


def table(counts, rows=None, cols=("malnourished", "not")):
    counts = np.asarray(counts)
    rows = rows or tuple(f"r{i}" for i in range(counts.shape[0]))
    return CrossTab(tuple(rows), tuple(cols), counts)


class TestBuildCrosstab:
    def test_additivity_within_level(self):
        spec = VariableSpec("v", ("a", "b"), "a")
        data = Dataset([1, 2, 4], [3, 4, 9], {"v": ("a", "a", "b")})
        tab = build_crosstab(data, spec)
        np.testing.assert_array_equal(tab.counts, [[3, 4], [4, 5]])
        assert tab.row_labels == ("a", "b")

    def test_all_events_zero_second_column(self):
        spec = VariableSpec("v", ("a", "b"), "a")
        data = Dataset([3, 2], [3, 2], {"v": ("a", "b")})
        tab = build_crosstab(data, spec)
        np.testing.assert_array_equal(tab.counts[:, 1], [0, 0])

    def test_even_split_symmetry(self):
        spec = VariableSpec("v", ("a", "b"), "a")
        data = Dataset([2, 3], [4, 6], {"v": ("a", "b")})
        tab = build_crosstab(data, spec)
        np.testing.assert_array_equal(tab.counts[:, 0], tab.counts[:, 1])

    def test_empty_level_keeps_zero_row(self):
        spec = VariableSpec("v", ("a", "b", "c"), "a")
        data = Dataset([1, 1], [2, 2], {"v": ("a", "b")})
        tab = build_crosstab(data, spec)
        np.testing.assert_array_equal(tab.counts[2], [0, 0])

    def test_unknown_level_raises(self):
        spec = VariableSpec("v", ("a", "b"), "a")
        data = Dataset([1], [2], {"v": ("zz",)})
        with pytest.raises(ValueError, match="row 1.*zz"):
            build_crosstab(data, spec)


class TestChiSquareTest:
    def test_exact_independence(self):
        result = chi_square_test(table([[15, 15], [15, 15]]))
        assert result.chi2 == 0.0
        assert result.df == 1
        assert result.p_value == 1.0
        assert result.star == ""

    def test_hand_computed_two_by_two(self):
        # margins 30/30, expected all 15: chi2 = 4 * 25/15 = 20/3
        result = chi_square_test(table([[10, 20], [20, 10]]))
        assert result.chi2 == pytest.approx(20.0 / 3.0, rel=1e-12)
        assert result.df == 1
        assert result.p_value == pytest.approx(0.00982, abs=1e-5)
        assert result.star == "***"

    def test_proportional_rows_give_zero(self):
        result = chi_square_test(table([[10, 20], [5, 10], [20, 40]]))
        assert result.chi2 == pytest.approx(0.0, abs=1e-12)
        assert result.df == 2

    def test_df_formula(self):
        result = chi_square_test(table(np.full((4, 2), 7)))
        assert result.df == 3

    def test_p_value_consistent_with_sf(self):
        result = chi_square_test(table([[12, 5], [7, 19]]))
        assert result.p_value == chisq_sf(result.chi2, result.df)

    def test_low_expected_warning(self):
        assert chi_square_test(table([[2, 30], [3, 40]])).low_expected_warning
        assert not chi_square_test(table([[20, 30], [30, 40]])).low_expected_warning

    def test_degenerate_row_named(self):
        with pytest.raises(DegenerateTableError, match="empty_level"):
            chi_square_test(table([[5, 5], [0, 0]], rows=("ok", "empty_level")))

    def test_degenerate_column_named(self):
        with pytest.raises(DegenerateTableError, match="not"):
            chi_square_test(table([[5, 0], [5, 0]]))

    @given(st.permutations([0, 1, 2]), st.permutations([0, 1]))
    def test_permutation_invariance(self, row_perm, col_perm):
        counts = np.array([[10, 20], [30, 5], [8, 17]])
        base = chi_square_test(table(counts)).chi2
        permuted = counts[np.array(row_perm)][:, np.array(col_perm)]
        assert chi_square_test(table(permuted)).chi2 == pytest.approx(
            base, rel=1e-12
        )

    def test_integer_scaling(self):
        counts = np.array([[4, 9], [11, 6]])
        base = chi_square_test(table(counts)).chi2
        for c in (2, 5):
            scaled = chi_square_test(table(c * counts)).chi2
            assert scaled == pytest.approx(c * base, rel=1e-12)

    def test_zero_iff_observed_equals_expected(self):
        counts = np.array([[9, 3], [21, 7]])  # rank one: observed == expected
        result = chi_square_test(table(counts))
        assert result.chi2 == pytest.approx(0.0, abs=1e-12)

    def test_p_monotone_in_chi2(self):
        ps = [chisq_sf(x, 3) for x in (0.5, 1.0, 5.0, 12.0)]
        assert all(a > b for a, b in zip(ps, ps[1:]))


class TestCrossTabValidation:
    def test_needs_two_rows(self):
        with pytest.raises(ValueError, match="at least 2"):
            CrossTab(("a",), ("x", "y"), np.array([[1, 2]]))

    def test_rejects_negative_counts(self):
        with pytest.raises(ValueError, match="nonnegative"):
            table([[1, -1], [2, 3]])
