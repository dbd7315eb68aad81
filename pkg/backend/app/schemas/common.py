"""
Shared pydantic types for CubeLab file formats.

Rationals travel as "p/q" strings (or "p" for integers); plain JSON integers
are accepted on input. Floats are rejected everywhere.
"""

from fractions import Fraction
from typing import Annotated, Any, List

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator

from ..models.rational import format_rational, to_rational


def _parse_rational(value: Any) -> Fraction:
    try:
        return to_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {value!r}: {exc}") from exc


RationalStr = Annotated[
    Fraction,
    PlainValidator(_parse_rational),
    PlainSerializer(format_rational, return_type=str),
]
RationalVector = List[RationalStr]
RationalMatrix = List[List[RationalStr]]


class CubeLabSchema(BaseModel):
    """Base for every file format: field order is the serialized key order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True, exclude_none=True)
