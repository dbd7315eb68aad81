"""
Tests for the body value types.

This module tests construction-time validation of boxes, parallelepipeds
and axis ellipsoids, and the named cubes.
"""

from fractions import Fraction

import pytest

from app.exceptions import DegenerateBoxError, DimensionMismatchError, SingularMatrixError
from app.models.geometry import (
    AxisBox,
    AxisEllipsoid,
    Parallelepiped,
    orthant_cube,
    shrunk_cube,
    unit_cube,
)


class TestAxisBox:
    """Test the AxisBox model."""

    def test_box_properties(self):
        """Widths and midpoint are exact."""
        box = AxisBox.of([0, "1/3"], ["2/3", 1])
        assert box.dim == 2
        assert box.widths == (Fraction(2, 3), Fraction(2, 3))
        assert box.midpoint == (Fraction(1, 3), Fraction(2, 3))

    def test_inverted_axis_rejected(self):
        with pytest.raises(DegenerateBoxError) as exc_info:
            AxisBox.of([0, 1], [1, 0])
        assert exc_info.value.axis == 1

    def test_zero_width_axis_rejected(self):
        """A box that is flat along some axis has no interior and is refused."""
        with pytest.raises(DegenerateBoxError) as exc_info:
            AxisBox.of([0, 0], [1, 0])
        assert exc_info.value.axis == 1
        assert exc_info.value.details == {"lower": "0", "upper": "0"}

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            AxisBox.of([0], [1, 1])

    def test_corners(self):
        """A box has 2^n corners, lower-first."""
        corners = list(unit_cube(2).corners())
        assert len(corners) == 4
        assert corners[0] == (-1, -1)
        assert corners[-1] == (1, 1)

    def test_named_cubes(self):
        assert shrunk_cube(1, Fraction(1, 10)) == AxisBox.of(["-9/10"], ["9/10"])
        assert orthant_cube(2) == AxisBox.of([0, 0], [2, 2])


class TestParallelepiped:
    """Test the Parallelepiped model."""

    def test_inverse(self):
        p = Parallelepiped.of([[2, 1], [0, 1]], [0, 0])
        assert p.inverse == ((Fraction(1, 2), Fraction(-1, 2)), (0, 1))
        assert not p.is_axis_parallel

    def test_singular_map_rejected(self):
        """A singular map does not define a bounded body."""
        with pytest.raises(SingularMatrixError):
            Parallelepiped.of([[1, 1], [1, 1]], [0, 0])

    def test_axis_parallel(self):
        assert Parallelepiped.of([[3, 0], [0, 9]], ["2/3", "2/9"]).is_axis_parallel


class TestAxisEllipsoid:
    """Test the AxisEllipsoid model."""

    def test_squared_semi_axes_must_be_positive(self):
        with pytest.raises(ValueError):
            AxisEllipsoid.of([0, 0], [1, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            AxisEllipsoid.of([0, 0], [1])
