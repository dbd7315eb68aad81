"""
Lattice instances and gap-oracle answers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

from ..exceptions import DimensionMismatchError
from .rational import Matrix, Vector


@dataclass(frozen=True)
class LatticeInstance:
    """Basis A (columns generate the lattice), target t and optional distance D."""

    basis: Matrix
    target: Vector
    dist: Optional[Fraction] = None

    def __post_init__(self):
        if len(self.basis) != len(self.target):
            raise DimensionMismatchError(len(self.basis), len(self.target))
        if self.dist is not None and self.dist <= 0:
            raise ValueError(f"gap distance must be positive, got {self.dist}")

    @property
    def dim(self) -> int:
        return len(self.target)

    def with_dist(self, dist: Fraction) -> "LatticeInstance":
        return replace(self, dist=Fraction(dist))


@dataclass(frozen=True)
class GapResult:
    """Either a witness lattice vector (with its integer coefficients) or an empty assertion."""

    vector: Optional[Vector] = None
    coeffs: Optional[Tuple[int, ...]] = None

    @classmethod
    def found(cls, vector: Vector, coeffs: Tuple[int, ...]) -> "GapResult":
        return cls(tuple(vector), tuple(int(c) for c in coeffs))

    @classmethod
    def empty(cls) -> "GapResult":
        return cls()

    @property
    def is_found(self) -> bool:
        return self.vector is not None

    @property
    def is_empty(self) -> bool:
        return self.vector is None


@dataclass(frozen=True)
class CvpSolution:
    """A closest lattice vector, its coefficients and its l-inf distance to the target."""

    vector: Vector
    coeffs: Tuple[int, ...]
    dist: Fraction
