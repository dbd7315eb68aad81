"""
Exact membership and containment predicates for boxes, parallelepipeds and
axis-parallel ellipsoids.

Nothing here takes a tolerance: every comparison is between Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence, Union

from ..models.geometry import AxisBox, AxisEllipsoid, Parallelepiped
from ..models.rational import RationalLike, Vector, diagonal, to_rational
from .linalg import add, check_dim, hadamard, inf_norm, mat_vec, scale, sub

Body = Union[Parallelepiped, AxisEllipsoid]


def box_contains(b: AxisBox, x: Sequence[Fraction]) -> bool:
    """True iff lower <= x <= upper coordinatewise (boundary included)."""
    check_dim(b.dim, len(x))
    return all(lo <= xj <= hi for lo, xj, hi in zip(b.lower, x, b.upper))


def pp_contains(p: Parallelepiped, x: Sequence[Fraction], scale_by: RationalLike = 1) -> bool:
    """True iff ||E(x - d)||_inf <= scale_by.

    scale_by=1 tests P itself, scale_by=2 tests the dilate P^s.
    """
    check_dim(p.dim, len(x))
    return inf_norm(mat_vec(p.map, sub(x, p.center))) <= to_rational(scale_by)


def pp_from_box(b: AxisBox) -> Parallelepiped:
    """Canonical parallelepiped of a box: E = diag(1/h), d = midpoint."""
    return Parallelepiped(diagonal([2 / w for w in b.widths]), b.midpoint)


def pp_vertices(p: Parallelepiped, scale_by: RationalLike = 1) -> Iterator[Vector]:
    """Vertices d + scale * E^{-1} sigma for sigma in {-1, +1}^n."""
    s = to_rational(scale_by)
    inv = p.inverse
    for signs in product((-1, 1), repeat=p.dim):
        yield add(p.center, scale(s, mat_vec(inv, tuple(Fraction(v) for v in signs))))


def pp_scaled_inside_box(p: Parallelepiped, outer: AxisBox, scale_by: RationalLike = 2) -> bool:
    """True iff p dilated by ``scale_by`` about its center lies inside ``outer``.

    A convex polytope lies in a box iff all its vertices do, so the check
    runs over the 2**n vertices.
    """
    check_dim(outer.dim, p.dim)
    return all(box_contains(outer, v) for v in pp_vertices(p, scale_by))


def pp_scaled_in_positive_orthant(p: Parallelepiped, scale_by: RationalLike = 2) -> bool:
    return all(min(v) >= 0 for v in pp_vertices(p, scale_by))


def ellipsoid_value(e: AxisEllipsoid, x: Sequence[Fraction]) -> Fraction:
    """The quadratic form sum_j (x_j - c_j)^2 / s_j."""
    check_dim(e.dim, len(x))
    return sum(
        ((xj - cj) ** 2 / sj for xj, cj, sj in zip(x, e.center, e.sq_semi_axes)),
        Fraction(0),
    )


def ellipsoid_contains(e: AxisEllipsoid, x: Sequence[Fraction]) -> bool:
    return ellipsoid_value(e, x) <= 1


def ellipsoid_inside_box(e: AxisEllipsoid, outer: AxisBox) -> bool:
    """An axis ellipsoid lies in a box iff each semi-axis fits on both sides of the center."""
    check_dim(outer.dim, e.dim)
    for c, s, lo, hi in zip(e.center, e.sq_semi_axes, outer.lower, outer.upper):
        if not lo <= c <= hi:
            return False
        if (c - lo) ** 2 < s or (hi - c) ** 2 < s:
            return False
    return True


def ellipsoid_in_positive_orthant(e: AxisEllipsoid) -> bool:
    return all(c >= 0 and c * c >= s for c, s in zip(e.center, e.sq_semi_axes))


def body_contains(body: Body, x: Sequence[Fraction]) -> bool:
    if isinstance(body, Parallelepiped):
        return pp_contains(body, x, 1)
    return ellipsoid_contains(body, x)


def reflect_body(body: Body, signs: Sequence[int], shift: Sequence[Fraction] = ()) -> Body:
    """Image of ``body`` under x -> shift + signs * x (coordinatewise).

    ``shift`` defaults to the origin. For a parallelepiped the new map is
    E * diag(signs), since diag(signs) is its own inverse.
    """
    sigma = tuple(Fraction(s) for s in signs)
    check_dim(body.dim, len(sigma))
    offset = tuple(shift) if shift else tuple(Fraction(0) for _ in sigma)
    if isinstance(body, Parallelepiped):
        new_map = tuple(
            tuple(row[j] * sigma[j] for j in range(len(sigma))) for row in body.map
        )
        return Parallelepiped(new_map, add(offset, hadamard(sigma, body.center)))
    return AxisEllipsoid(add(offset, hadamard(sigma, body.center)), body.sq_semi_axes)


def translate_body(body: Body, offset: Sequence[Fraction]) -> Body:
    if isinstance(body, Parallelepiped):
        return Parallelepiped(body.map, add(body.center, offset))
    return AxisEllipsoid(add(body.center, offset), body.sq_semi_axes)
