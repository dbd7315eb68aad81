"""
Exact rational value types for CubeLab.

Scalars are ``fractions.Fraction`` (always gcd-reduced with a positive
denominator), vectors are tuples of fractions and matrices are tuples of row
tuples. Tuples keep every value immutable and hashable.
"""

from fractions import Fraction
from numbers import Rational as _RationalNumber
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]

RationalLike = Union[Fraction, int, str]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a canonical Fraction.

    Floats are rejected: a binary float silently carries representation
    error into every downstream predicate.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"floats are not accepted as exact rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalNumber)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        if "." in text or "e" in text.lower():
            raise ValueError(f"'{value}' is not of the form p/q")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vector(values: Iterable[RationalLike]) -> Vector:
    return tuple(to_rational(v) for v in values)


def matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    """Build a square matrix from rows; raises ValueError when not square."""
    result = tuple(vector(row) for row in rows)
    n = len(result)
    if n == 0 or any(len(row) != n for row in result):
        raise ValueError("matrix must be square and non-empty")
    return result


def zeros(dim: int) -> Vector:
    return tuple(Fraction(0) for _ in range(dim))


def ones(dim: int) -> Vector:
    return tuple(Fraction(1) for _ in range(dim))


def identity(dim: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim))
        for i in range(dim)
    )


def diagonal(entries: Sequence[RationalLike]) -> Matrix:
    values = vector(entries)
    n = len(values)
    return tuple(
        tuple(values[i] if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def format_vector(values: Sequence[Fraction]) -> list:
    return [format_rational(v) for v in values]


def format_matrix(rows: Sequence[Sequence[Fraction]]) -> list:
    return [format_vector(row) for row in rows]
