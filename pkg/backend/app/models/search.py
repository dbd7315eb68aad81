"""
Configuration, state and result types of the boosting and binary-search reductions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from ..exceptions import InvalidEpsError
from .rational import Vector


@dataclass(frozen=True)
class BoostConfig:
    """Target gap 1 + eps for boosting; delta = eps / (1 + eps) so that 1 - delta = 1 / (1 + eps).

    ``oracle`` is the constant-gap oracle being boosted; its alpha is also the
    dilation factor of the parallelepiped cover.
    """

    eps: Fraction
    oracle: object
    delta: Fraction = field(init=False)

    def __post_init__(self):
        eps = Fraction(self.eps)
        if not 0 < eps <= 1:
            raise InvalidEpsError(eps, "(0, 1]")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", eps / (1 + eps))


@dataclass(frozen=True)
class ApproxConfig:
    """Both deltas of one approximation run.

    ``search_delta`` = min(eps/5, 1/2) sets the bracket base 1 + delta;
    ``boost_delta`` = search_delta / (1 + search_delta) sizes the cover
    used to answer each (1 + search_delta)-gap query.
    """

    eps: Fraction
    search_delta: Fraction
    boost_delta: Fraction

    @classmethod
    def for_eps(cls, eps: Fraction, cap: Fraction = Fraction(1, 2)) -> "ApproxConfig":
        eps = Fraction(eps)
        if not 0 < eps < 1:
            raise InvalidEpsError(eps)
        search_delta = min(eps / 5, Fraction(cap))
        return cls(eps=eps, search_delta=search_delta, boost_delta=search_delta / (1 + search_delta))


@dataclass
class SearchState:
    """Bracket exponents: (1+delta)^L <= d(t, Lambda) <= (1+delta)^U."""

    L: int
    U: int
    delta: Fraction
    calls: int = 0
    step: int = 0

    @property
    def gap(self) -> int:
        """M_j = U - L."""
        return self.U - self.L


@dataclass(frozen=True)
class ApproxResult:
    vector: Vector
    coeffs: Tuple[int, ...]
    achieved_dist: Fraction
    oracle_calls: int
    exact_dist: Optional[Fraction] = None
    gallop_calls: int = 0
    search_calls: int = 0
    steps: int = 0
    initial_gap: int = 0
    lower: int = 0
    upper: int = 0

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.exact_dist is None:
            return None
        if self.exact_dist == 0:
            return Fraction(1) if self.achieved_dist == 0 else None
        return self.achieved_dist / self.exact_dist
