"""
Exact linear algebra over the rationals.

All routines work on ``Fraction`` tuples and never touch floating point.
Gaussian elimination picks the first nonzero pivot in row order, which keeps
results deterministic; numerical pivoting heuristics have no meaning in
exact arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

from ..exceptions import DimensionMismatchError, SingularMatrixError
from ..models.rational import Matrix, Vector, identity


def check_dim(expected: int, actual: int) -> None:
    if expected != actual:
        raise DimensionMismatchError(expected, actual)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    check_dim(len(u), len(v))
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    check_dim(len(u), len(v))
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def hadamard(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    """Coordinatewise product, used for orthant reflections."""
    check_dim(len(u), len(v))
    return tuple(Fraction(a) * b for a, b in zip(u, v))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    check_dim(len(u), len(v))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    check_dim(len(m), len(v))
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    check_dim(len(a), len(b))
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def scale_matrix(c: Fraction, m: Matrix) -> Matrix:
    return tuple(scale(c, row) for row in m)


def scale_rows(factors: Sequence[Fraction], m: Matrix) -> Matrix:
    """Multiply row i of ``m`` by ``factors[i]`` (left multiplication by a diagonal)."""
    check_dim(len(m), len(factors))
    return tuple(scale(f, row) for f, row in zip(factors, m))


def inf_norm(v: Sequence[Fraction]) -> Fraction:
    """Max over coordinates of |v_j|; 0 for the empty vector."""
    return max((abs(Fraction(a)) for a in v), default=Fraction(0))


def is_integral(v: Sequence[Fraction]) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def round_nearest(v: Sequence[Fraction]) -> tuple:
    """Nearest-integer rounding with halves rounded up (no banker's rounding)."""
    return tuple(math.floor(Fraction(a) + Fraction(1, 2)) for a in v)


def _eliminate(m: Matrix, rhs: List[List[Fraction]]) -> List[List[Fraction]]:
    """Reduce ``m`` to the identity while applying the same row operations to ``rhs``.

    ``rhs`` holds one list per row of ``m``; it is returned reduced.
    """
    n = len(m)
    a = [list(row) for row in m]
    b = [list(row) for row in rhs]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(details={"column": col})
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        p = a[col][col]
        if p != 1:
            a[col] = [x / p for x in a[col]]
            b[col] = [x / p for x in b[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f == 0:
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return b


def solve(m: Matrix, b: Sequence[Fraction]) -> Vector:
    """Solve ``m x = b`` exactly.

    Args:
        m: Square nonsingular matrix
        b: Right-hand side

    Returns:
        The unique exact solution.

    Raises:
        SingularMatrixError: If elimination finds no pivot in some column
        DimensionMismatchError: If ``b`` does not match ``m``
    """
    check_dim(len(m), len(b))
    reduced = _eliminate(m, [[Fraction(x)] for x in b])
    return tuple(row[0] for row in reduced)


def invert(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError."""
    reduced = _eliminate(m, [list(row) for row in identity(len(m))])
    return tuple(tuple(row) for row in reduced)


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det
