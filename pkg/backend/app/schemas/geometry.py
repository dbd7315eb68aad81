"""
Pydantic schemas for bodies and cover files.

Bodies serialize as {"lower", "upper"} (boxes), {"E", "d"} (parallelepipeds)
and {"c", "s"} (axis ellipsoids with squared semi-axes).
"""

from typing import List, Optional, Union

from pydantic import Field

from ..models.covering import Cover, CoverIndex, CoverKind, CoverSpec
from ..models.geometry import AxisBox, AxisEllipsoid, Parallelepiped
from .common import CubeLabSchema, RationalMatrix, RationalStr, RationalVector


class BoxSchema(CubeLabSchema):
    lower: RationalVector
    upper: RationalVector

    @classmethod
    def from_model(cls, box: AxisBox) -> "BoxSchema":
        return cls(lower=list(box.lower), upper=list(box.upper))

    def to_model(self) -> AxisBox:
        return AxisBox(tuple(self.lower), tuple(self.upper))


class ParallelepipedSchema(CubeLabSchema):
    map: RationalMatrix = Field(..., alias="E", description="Rows of E; the body is {x : ||E(x - d)|| <= 1}")
    center: RationalVector = Field(..., alias="d")

    @classmethod
    def from_model(cls, p: Parallelepiped) -> "ParallelepipedSchema":
        return cls(E=[list(row) for row in p.map], d=list(p.center))

    def to_model(self) -> Parallelepiped:
        return Parallelepiped(tuple(tuple(row) for row in self.map), tuple(self.center))


class EllipsoidSchema(CubeLabSchema):
    center: RationalVector = Field(..., alias="c")
    sq_semi_axes: RationalVector = Field(..., alias="s", description="Squared semi-axes s_i > 0")

    @classmethod
    def from_model(cls, e: AxisEllipsoid) -> "EllipsoidSchema":
        return cls(c=list(e.center), s=list(e.sq_semi_axes))

    def to_model(self) -> AxisEllipsoid:
        return AxisEllipsoid(tuple(self.center), tuple(self.sq_semi_axes))


BodySchema = Union[ParallelepipedSchema, EllipsoidSchema]


def body_schema(body) -> BodySchema:
    if isinstance(body, Parallelepiped):
        return ParallelepipedSchema.from_model(body)
    return EllipsoidSchema.from_model(body)


class CoverIndexSchema(CubeLabSchema):
    orthant: List[int]
    exponents: List[int]


class CoverBodySchema(CubeLabSchema):
    index: CoverIndexSchema
    body: BodySchema


class CoverSpecSchema(CubeLabSchema):
    dim: int = Field(..., ge=1)
    eps: RationalStr
    kind: CoverKind
    per_axis_count: int
    total_count: int
    ratio: RationalStr
    factor: Optional[RationalStr] = None

    @classmethod
    def from_model(cls, spec: CoverSpec) -> "CoverSpecSchema":
        return cls(
            dim=spec.dim,
            eps=spec.eps,
            kind=spec.kind,
            per_axis_count=spec.per_axis_count,
            total_count=spec.total_count,
            ratio=spec.ratio,
            factor=spec.factor,
        )

    def to_model(self) -> CoverSpec:
        return CoverSpec(
            dim=self.dim,
            eps=self.eps,
            kind=self.kind,
            per_axis_count=self.per_axis_count,
            total_count=self.total_count,
            ratio=self.ratio,
            factor=self.factor,
        )


class CoverFile(CubeLabSchema):
    """A serialized cover: its parameters and every (index, body) pair."""

    spec: CoverSpecSchema
    bodies: List[CoverBodySchema]

    @classmethod
    def from_model(cls, cover: Cover) -> "CoverFile":
        return cls(
            spec=CoverSpecSchema.from_model(cover.spec),
            bodies=[
                CoverBodySchema(
                    index=CoverIndexSchema(orthant=list(index.orthant), exponents=list(index.exponents)),
                    body=body_schema(body),
                )
                for index, body in cover
            ],
        )

    def to_model(self) -> Cover:
        bodies = {}
        for item in self.bodies:
            index = CoverIndex(tuple(item.index.orthant), tuple(item.index.exponents))
            bodies[index] = item.body.to_model()
        return Cover(self.spec.to_model(), bodies)
