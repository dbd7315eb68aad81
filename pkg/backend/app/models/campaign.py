"""
Campaign and instance-stream parameters for the verification harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Tuple

from ..exceptions import ConfigError


class CampaignKind(str, Enum):
    COVER_VERIFY = "cover-verify"
    COUNT_AUDIT = "count-audit"
    APPROX_AUDIT = "approx-audit"
    GAP_BUDGET = "gap-budget"
    CVP_AUDIT = "cvp-audit"
    IP_AUDIT = "ip-audit"


class OracleKind(str, Enum):
    EXACT = "exact"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class InstanceGen:
    """Parameters of a reproducible instance stream."""

    seed: int
    dim: int
    entry_bound: int = 5
    count: int = 1

    def __post_init__(self):
        if self.entry_bound < 1:
            raise ConfigError("entry_bound must be at least 1", field="entry_bound")
        if self.dim < 1:
            raise ConfigError("dimension must be positive", field="dim")
        if self.count < 0:
            raise ConfigError("count must be non-negative", field="count")


@dataclass(frozen=True)
class Campaign:
    """A reproducible verification run: (kind, params, seed) determines the report."""

    kind: CampaignKind
    dims: Tuple[int, ...] = (1, 2, 3)
    eps_list: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1, 10))
    samples: int = 100
    seed: int = 0
    oracle: OracleKind = OracleKind.EXACT
    cover_kind: str = "box"
    entry_bound: int = 5
    extended: bool = False
    workers: int = 1
    options: Tuple[Tuple[str, str], ...] = field(default_factory=tuple)
