"""
Tests for the exact rational value helpers.
"""

from fractions import Fraction

import pytest

from app.models.rational import (
    diagonal,
    format_matrix,
    format_rational,
    identity,
    matrix,
    to_rational,
    vector,
)


class TestToRational:
    """Test conversion of inputs to canonical fractions."""

    def test_accepts_ints_fractions_and_strings(self):
        """Ints, fractions and p/q strings all convert exactly."""
        assert to_rational(3) == Fraction(3)
        assert to_rational(Fraction(6, 4)) == Fraction(3, 2)
        assert to_rational("53/10") == Fraction(53, 10)
        assert to_rational(" -2/4 ") == Fraction(-1, 2)

    def test_rejects_floats(self):
        """Binary floats never enter the exact pipeline."""
        with pytest.raises(TypeError):
            to_rational(0.5)

    def test_rejects_booleans(self):
        with pytest.raises(TypeError):
            to_rational(True)

    @pytest.mark.parametrize("text", ["", "0.5", "1e3", "abc"])
    def test_rejects_malformed_strings(self, text):
        """Decimal and scientific notation are not p/q."""
        with pytest.raises(ValueError):
            to_rational(text)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            to_rational("1/0")


class TestFormatting:
    """Test the "p/q" serialization."""

    def test_format_rational(self):
        """Integers drop the denominator; fractions are reduced."""
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-6, 4)) == "-3/2"
        assert format_rational(Fraction(0)) == "0"

    def test_format_matrix(self):
        assert format_matrix(diagonal(["1/2", 3])) == [["1/2", "0"], ["0", "3"]]


class TestConstructors:
    """Test vector and matrix builders."""

    def test_vector(self):
        assert vector([1, "1/3"]) == (Fraction(1), Fraction(1, 3))

    def test_matrix_must_be_square(self):
        """Non-square and empty inputs are rejected."""
        with pytest.raises(ValueError):
            matrix([[1, 2]])
        with pytest.raises(ValueError):
            matrix([])

    def test_identity(self):
        assert identity(2) == ((1, 0), (0, 1))
