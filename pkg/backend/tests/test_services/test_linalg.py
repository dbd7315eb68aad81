"""
Tests for exact linear algebra.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import DimensionMismatchError, SingularMatrixError
from app.models.rational import diagonal, identity, matrix, vector
from app.services.linalg import (
    determinant,
    inf_norm,
    invert,
    is_integral,
    mat_mul,
    mat_vec,
    round_nearest,
    solve,
)

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
nonsingular_matrices = (
    st.integers(1, 4)
    .flatmap(lambda n: st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n))
    .map(lambda rows: tuple(tuple(row) for row in rows))
    .filter(lambda m: determinant(m) != 0)
)


class TestSolve:
    """Test exact Gaussian elimination."""

    def test_identity(self):
        assert solve(identity(2), vector(["3/2", -1])) == (Fraction(3, 2), Fraction(-1))

    def test_upper_triangular(self):
        """[[2,1],[0,1]] x = (1, 0) has x = (1/2, 0)."""
        assert solve(matrix([[2, 1], [0, 1]]), vector([1, 0])) == (Fraction(1, 2), 0)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            solve(matrix([[1, 1], [1, 1]]), vector([1, 2]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve(identity(2), vector([1]))

    def test_needs_row_swap(self):
        """A zero leading entry is handled by pivoting."""
        m = matrix([[0, 1], [1, 0]])
        assert solve(m, vector([2, 3])) == (3, 2)

    @settings(max_examples=200, deadline=None)
    @given(nonsingular_matrices, st.data())
    def test_solution_satisfies_system(self, m, data):
        """M * solve(M, b) = b exactly."""
        b = tuple(data.draw(st.lists(small_fractions, min_size=len(m), max_size=len(m))))
        assert mat_vec(m, solve(m, b)) == b


class TestInvert:
    """Test exact inversion."""

    @pytest.mark.parametrize("m,expected", [
        (diagonal([2, 4]), diagonal(["1/2", "1/4"])),
        (matrix([[2, 1], [0, 1]]), matrix([["1/2", "-1/2"], [0, 1]])),
        (matrix([[5]]), matrix([["1/5"]])),
    ])
    def test_examples(self, m, expected):
        assert invert(m) == expected

    @settings(max_examples=50, deadline=None)
    @given(st.lists(small_fractions, min_size=9, max_size=9))
    def test_inverse_product_is_identity(self, entries):
        """M * M^-1 = I exactly whenever M is nonsingular."""
        m = tuple(tuple(entries[3 * i:3 * i + 3]) for i in range(3))
        if determinant(m) == 0:
            with pytest.raises(SingularMatrixError):
                invert(m)
            return
        assert mat_mul(m, invert(m)) == identity(3)

    @settings(max_examples=200, deadline=None)
    @given(nonsingular_matrices)
    def test_double_inverse(self, m):
        assert invert(invert(m)) == m


class TestDeterminant:
    """Test exact determinants."""

    def test_examples(self):
        assert determinant(matrix([[2, 0], [1, 1]])) == 2
        assert determinant(matrix([[0, 1], [1, 0]])) == -1
        assert determinant(matrix([[1, 2], [2, 4]])) == 0


class TestVectorHelpers:
    """Test norms, rounding and integrality."""

    @pytest.mark.parametrize("v,expected", [
        (vector([0, 0, 0]), Fraction(0)),
        (vector(["1/2", "-3/4"]), Fraction(3, 4)),
        (vector(["2/5", "2/5"]), Fraction(2, 5)),
    ])
    def test_inf_norm(self, v, expected):
        assert inf_norm(v) == expected

    def test_round_nearest_rounds_halves_up(self):
        """Halves go up on both sides of zero."""
        assert round_nearest(vector(["1/2", "-1/2", "53/10", "-53/10"])) == (1, 0, 5, -5)

    def test_is_integral(self):
        assert is_integral(vector([1, -2]))
        assert not is_integral(vector([1, "1/2"]))

    def test_mat_vec(self):
        assert mat_vec(matrix([[2, 0], [1, 1]]), vector([1, 2])) == (2, 3)
