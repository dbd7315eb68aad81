"""
Value types describing cube coverings and the counting grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..exceptions import ConfigError, InvalidEpsError
from .geometry import AxisEllipsoid, Parallelepiped


class CoverKind(str, Enum):
    """Kind of body used by a covering."""

    BOX = "box"
    ELLIPSOID = "ellipsoid"


@dataclass(frozen=True, order=True)
class CoverIndex:
    """Position of a body in a covering: orthant signs and per-axis exponents.

    Ordering is lexicographic in (orthant, exponents), the order in which
    covers are generated.
    """

    orthant: Tuple[int, ...]
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if len(self.orthant) != len(self.exponents):
            raise ValueError("orthant and exponents must have the same length")
        if any(s not in (-1, 1) for s in self.orthant):
            raise ValueError(f"orthant signs must be +-1, got {self.orthant}")
        if any(a < 0 for a in self.exponents):
            raise ValueError(f"exponents must be non-negative, got {self.exponents}")

    @property
    def dim(self) -> int:
        return len(self.orthant)


@dataclass(frozen=True)
class CoverSpec:
    """Achieved size of a generated covering."""

    dim: int
    eps: Fraction
    kind: CoverKind
    per_axis_count: int
    total_count: int
    # Exponent base: k = (c+1)/(c-1) for boxes, r-hat for ellipsoids
    ratio: Fraction
    factor: Optional[Fraction] = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise InvalidEpsError(self.eps)
        if self.per_axis_count < 1:
            raise ConfigError("per_axis_count must be at least 1", field="per_axis_count")
        if self.total_count != 2 ** self.dim * self.per_axis_count ** self.dim:
            raise ConfigError("total_count must equal 2^n * per_axis_count^n", field="total_count")

    @property
    def max_exponent(self) -> int:
        return self.per_axis_count - 1


@dataclass(frozen=True)
class GridSpec:
    """The grid G_eps of points with coordinates 2^-a >= eps."""

    dim: int
    eps: Fraction
    levels: int = field(init=False)

    def __post_init__(self):
        from ..services.covering import exponent_bound

        if self.dim < 1:
            raise ConfigError("grid dimension must be positive", field="dim")
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "levels", 1 + exponent_bound(self.eps, 2, strict=False))

    @property
    def size(self) -> int:
        return self.levels ** self.dim


@dataclass
class Cover:
    """A materialized covering with an exact point-location index."""

    spec: CoverSpec
    bodies: Dict[CoverIndex, object]

    def __iter__(self):
        return iter(self.bodies.items())

    def __len__(self) -> int:
        return len(self.bodies)


BoxCoverItem = Tuple[CoverIndex, Parallelepiped]
EllipsoidCoverItem = Tuple[CoverIndex, AxisEllipsoid]
