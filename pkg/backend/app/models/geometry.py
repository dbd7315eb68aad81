"""
Geometric value types: axis boxes, parallelepipeds and axis-parallel ellipsoids.

All three are frozen dataclasses over exact rationals. Constructors validate
the invariants that every predicate in ``services.geometry`` relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..exceptions import DegenerateBoxError, DimensionMismatchError, SingularMatrixError
from ..models.rational import Matrix, RationalLike, Vector, matrix, vector


@dataclass(frozen=True)
class AxisBox:
    """Closed box lower <= x <= upper with positive width on every axis."""

    lower: Vector
    upper: Vector

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionMismatchError(len(self.lower), len(self.upper))
        if not self.lower:
            raise ValueError("box must have positive dimension")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo >= hi:
                raise DegenerateBoxError(j, {"lower": str(lo), "upper": str(hi)})

    @classmethod
    def of(cls, lower: Sequence[RationalLike], upper: Sequence[RationalLike]) -> "AxisBox":
        return cls(vector(lower), vector(upper))

    @classmethod
    def cube(cls, dim: int, low: RationalLike, high: RationalLike) -> "AxisBox":
        return cls.of([low] * dim, [high] * dim)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def widths(self) -> Vector:
        return tuple(hi - lo for lo, hi in zip(self.lower, self.upper))

    @property
    def midpoint(self) -> Vector:
        return tuple((lo + hi) / 2 for lo, hi in zip(self.lower, self.upper))

    def corners(self):
        """All 2**dim vertices in lexicographic (lower-first) order."""
        from itertools import product

        return (
            tuple(self.upper[j] if bit else self.lower[j] for j, bit in enumerate(bits))
            for bits in product((0, 1), repeat=self.dim)
        )


@dataclass(frozen=True)
class Parallelepiped:
    """The body {x : ||E(x - d)||_inf <= 1} with nonsingular map E and center d."""

    map: Matrix
    center: Vector

    def __post_init__(self):
        if len(self.map) != len(self.center):
            raise DimensionMismatchError(len(self.map), len(self.center))
        # Raises SingularMatrixError for a singular map.
        _ = self.inverse

    @classmethod
    def of(cls, rows: Sequence[Sequence[RationalLike]], center: Sequence[RationalLike]) -> "Parallelepiped":
        return cls(matrix(rows), vector(center))

    @property
    def dim(self) -> int:
        return len(self.center)

    @cached_property
    def inverse(self) -> Matrix:
        """E^{-1}, the vertex generator."""
        from ..services.linalg import invert

        try:
            return invert(self.map)
        except SingularMatrixError as exc:
            raise SingularMatrixError("Parallelepiped map is singular", exc.details) from exc

    @property
    def is_axis_parallel(self) -> bool:
        return all(
            self.map[i][j] == 0
            for i in range(self.dim)
            for j in range(self.dim)
            if i != j
        )


@dataclass(frozen=True)
class AxisEllipsoid:
    """Axis-parallel ellipsoid sum_j (x_j - c_j)^2 / s_j <= 1.

    ``sq_semi_axes`` stores a_j**2 so that every predicate stays rational.
    """

    center: Vector
    sq_semi_axes: Vector

    def __post_init__(self):
        if len(self.center) != len(self.sq_semi_axes):
            raise DimensionMismatchError(len(self.center), len(self.sq_semi_axes))
        if not self.center:
            raise ValueError("ellipsoid must have positive dimension")
        for j, s in enumerate(self.sq_semi_axes):
            if s <= 0:
                raise ValueError(f"squared semi-axis {j} must be positive, got {s}")

    @classmethod
    def of(cls, center: Sequence[RationalLike], sq_semi_axes: Sequence[RationalLike]) -> "AxisEllipsoid":
        return cls(vector(center), vector(sq_semi_axes))

    @property
    def dim(self) -> int:
        return len(self.center)


def unit_cube(dim: int) -> AxisBox:
    """H = [-1, 1]^n."""
    return AxisBox.cube(dim, -1, 1)


def shrunk_cube(dim: int, eps: Fraction) -> AxisBox:
    """H_eps = [-1 + eps, 1 - eps]^n."""
    eps = Fraction(eps)
    return AxisBox.cube(dim, -1 + eps, 1 - eps)


def orthant_cube(dim: int) -> AxisBox:
    """H' = [0, 2]^n."""
    return AxisBox.cube(dim, 0, 2)
