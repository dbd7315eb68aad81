"""
Pydantic schemas for campaign reports.

Reports carry no timestamps or durations, so the same campaign always
serializes to the same bytes.
"""

from typing import Any, Dict, List, Optional

from pydantic import Field

from ..models.campaign import Campaign, CampaignKind, OracleKind
from .common import CubeLabSchema, RationalStr


class CampaignSchema(CubeLabSchema):
    kind: CampaignKind
    dims: List[int]
    eps_list: List[RationalStr]
    samples: int = Field(..., ge=0)
    seed: int
    oracle: OracleKind
    cover_kind: str
    entry_bound: int = Field(..., ge=1)
    extended: bool
    options: Dict[str, str] = Field(default_factory=dict)

    @classmethod
    def from_model(cls, c: Campaign) -> "CampaignSchema":
        return cls(
            kind=c.kind,
            dims=list(c.dims),
            eps_list=list(c.eps_list),
            samples=c.samples,
            seed=c.seed,
            oracle=c.oracle,
            cover_kind=c.cover_kind,
            entry_bound=c.entry_bound,
            extended=c.extended,
            options=dict(c.options),
        )

    def to_model(self, workers: int = 1) -> Campaign:
        return Campaign(
            kind=self.kind,
            dims=tuple(self.dims),
            eps_list=tuple(self.eps_list),
            samples=self.samples,
            seed=self.seed,
            oracle=self.oracle,
            cover_kind=self.cover_kind,
            entry_bound=self.entry_bound,
            extended=self.extended,
            workers=workers,
            options=tuple(sorted(self.options.items())),
        )


class CaseResult(CubeLabSchema):
    """One case: its full input payload (enough to replay it) and its outcome."""

    index: int
    kind: CampaignKind
    passed: bool
    params: Dict[str, Any]
    metrics: Dict[str, Any] = Field(default_factory=dict)
    counterexample: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None


class Report(CubeLabSchema):
    campaign: CampaignSchema
    passed: bool
    total: int
    failed: int
    cases: List[CaseResult]

    def failures(self) -> List[CaseResult]:
        return [case for case in self.cases if not case.passed]
