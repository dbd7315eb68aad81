"""
Pydantic schemas for lattice instances, slab systems and solver answers.

Matrices are lists of rows; the lattice is generated by the columns of
``basis``.
"""

from typing import List, Literal, Optional

from pydantic import Field, field_validator

from ..models.lattice import CvpSolution, GapResult, LatticeInstance
from ..models.search import ApproxResult
from .common import CubeLabSchema, RationalMatrix, RationalStr, RationalVector


def _check_square(rows: list) -> list:
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError("matrix must be square and non-empty")
    return rows


class InstanceFile(CubeLabSchema):
    """A CVP or gap instance: {"basis", "target", "dist"?}."""

    basis: RationalMatrix
    target: RationalVector
    dist: Optional[RationalStr] = None

    @field_validator("basis")
    @classmethod
    def basis_is_square(cls, v):
        return _check_square(v)

    @classmethod
    def from_model(cls, inst: LatticeInstance) -> "InstanceFile":
        return cls(basis=[list(row) for row in inst.basis], target=list(inst.target), dist=inst.dist)

    def to_model(self) -> LatticeInstance:
        return LatticeInstance(
            tuple(tuple(row) for row in self.basis),
            tuple(self.target),
            self.dist,
        )


class SlabFile(CubeLabSchema):
    """A box integer program l <= A x <= u."""

    a: RationalMatrix = Field(..., alias="A")
    lower: RationalVector
    upper: RationalVector

    @field_validator("a")
    @classmethod
    def matrix_is_square(cls, v):
        return _check_square(v)


class CvpAnswer(CubeLabSchema):
    vector: RationalVector
    coeffs: List[int]
    dist: RationalStr

    @classmethod
    def from_model(cls, solution: CvpSolution) -> "CvpAnswer":
        return cls(vector=list(solution.vector), coeffs=list(solution.coeffs), dist=solution.dist)


class GapAnswer(CubeLabSchema):
    status: Literal["found", "empty"]
    alpha: RationalStr
    dist: RationalStr = Field(..., description="The queried distance D")
    vector: Optional[RationalVector] = None
    coeffs: Optional[List[int]] = None
    witness_dist: Optional[RationalStr] = None
    oracle_calls: int = Field(0, description="Calls made to the constant-gap base oracle")
    call_budget: Optional[int] = None

    @classmethod
    def from_model(
        cls,
        result: GapResult,
        alpha,
        dist,
        oracle_calls: int = 0,
        witness_dist=None,
        call_budget: Optional[int] = None,
    ) -> "GapAnswer":
        if result.is_empty:
            return cls(status="empty", alpha=alpha, dist=dist, oracle_calls=oracle_calls, call_budget=call_budget)
        return cls(
            status="found",
            alpha=alpha,
            dist=dist,
            vector=list(result.vector),
            coeffs=list(result.coeffs),
            witness_dist=witness_dist,
            oracle_calls=oracle_calls,
            call_budget=call_budget,
        )


class ApproxAnswer(CubeLabSchema):
    vector: RationalVector
    coeffs: List[int]
    achieved_dist: RationalStr
    eps: RationalStr
    oracle: str
    oracle_calls: int = Field(..., description="(1+delta)-gap queries made by the search")
    base_calls: int = Field(0, description="Constant-gap oracle calls behind those queries")
    gallop_calls: int = 0
    search_calls: int = 0
    search_budget: int = 0
    steps: int = 0
    initial_gap: int = 0
    exact_dist: Optional[RationalStr] = None
    ratio: Optional[RationalStr] = None

    @classmethod
    def from_model(
        cls,
        result: ApproxResult,
        eps,
        oracle: str,
        base_calls: int = 0,
        search_budget: int = 0,
    ) -> "ApproxAnswer":
        return cls(
            vector=list(result.vector),
            coeffs=list(result.coeffs),
            achieved_dist=result.achieved_dist,
            eps=eps,
            oracle=oracle,
            oracle_calls=result.oracle_calls,
            base_calls=base_calls,
            gallop_calls=result.gallop_calls,
            search_calls=result.search_calls,
            search_budget=search_budget,
            steps=result.steps,
            initial_gap=result.initial_gap,
            exact_dist=result.exact_dist,
            ratio=result.ratio,
        )


class IpAnswer(CubeLabSchema):
    """The CVP instance produced from a slab system, and the decision when solved."""

    instance: InstanceFile
    feasible: Optional[bool] = None
    point: Optional[List[int]] = None
    cvp_dist: Optional[RationalStr] = None
