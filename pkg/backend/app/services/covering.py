"""
Cube coverings by parallelepipeds and axis-parallel ellipsoids.

The cube H_eps = [-1+eps, 1-eps]^n is covered one orthant at a time. In the
positive orthant the parallelepiped cover uses the boxes

    U(a) = prod_j [1 - k^-a_j, 1 - k^-(a_j+1)],   k = (c+1)/(c-1),

each of which stays inside H = [-1, 1]^n after dilation by c about its center
(k = 3 for the default c = 2). The ellipsoid cover works in H' = [0, 2]^n on
the boxes Q(a) = prod_j [r^-(a_j+1), r^-a_j] and maps the circumscribed axis
ellipsoids back with x = sigma * (1 - y).

This module also hosts the grid G_eps and the point counts behind the two
lower-bound arguments.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from ..config import get_settings
from ..exceptions import (
    ConfigError,
    DimensionTooSmallError,
    InvalidEpsError,
    PreconditionViolatedError,
)
from ..models.covering import (
    BoxCoverItem,
    Cover,
    CoverIndex,
    CoverKind,
    CoverSpec,
    EllipsoidCoverItem,
    GridSpec,
)
from ..models.geometry import AxisBox, AxisEllipsoid, Parallelepiped, shrunk_cube, unit_cube
from ..models.rational import RationalLike, Vector, ones, to_rational
from .geometry import (
    Body,
    body_contains,
    box_contains,
    ellipsoid_in_positive_orthant,
    ellipsoid_inside_box,
    pp_contains,
    pp_from_box,
    pp_scaled_in_positive_orthant,
    pp_scaled_inside_box,
    reflect_body,
)
from .instances import make_rng, sample_box
from .linalg import check_dim

logger = logging.getLogger(__name__)


def _check_eps(eps: Fraction) -> Fraction:
    eps = to_rational(eps)
    if not 0 < eps < 1:
        raise InvalidEpsError(eps)
    return eps


def exponent_bound(eps: RationalLike, base: RationalLike, strict: Optional[bool] = None) -> int:
    """Largest A in N_0 with base^-A > eps (strict) or base^-A >= eps.

    The strict form bounds the exponents of the covering boxes; the
    non-strict form counts the levels of the grid G_eps. ``strict=None``
    picks the grid reading for base 2 and the covering reading otherwise.

    Computed by repeated exact division, never through a floating logarithm.

    Raises:
        InvalidEpsError: If eps is not in (0, 1)
    """
    eps = _check_eps(eps)
    base = to_rational(base)
    if base <= 1:
        raise ConfigError(f"exponent base must exceed 1, got {base}", field="base")
    if strict is None:
        strict = base != 2
    power = Fraction(1)
    exponent = 0
    while True:
        nxt = power / base
        if (nxt > eps) if strict else (nxt >= eps):
            power = nxt
            exponent += 1
        else:
            return exponent


def box_ratio(factor: RationalLike) -> Fraction:
    """k = (c+1)/(c-1): the largest ratio for which c * U stays in H."""
    c = to_rational(factor)
    if c <= 1:
        raise ConfigError(f"dilation factor must exceed 1, got {c}", field="factor")
    return (c + 1) / (c - 1)


def u_box(exponents: Sequence[int], ratio: RationalLike = 3) -> AxisBox:
    k = to_rational(ratio)
    return AxisBox(
        tuple(1 - k ** -a for a in exponents),
        tuple(1 - k ** -(a + 1) for a in exponents),
    )


def _resolve_factor(factor: Optional[RationalLike]) -> Fraction:
    return get_settings().scale_factor_value if factor is None else to_rational(factor)


def box_cover_spec(dim: int, eps: RationalLike, factor: Optional[RationalLike] = None) -> CoverSpec:
    eps = _check_eps(eps)
    if dim < 1:
        raise ConfigError("dimension must be positive", field="dim")
    c = _resolve_factor(factor)
    k = box_ratio(c)
    per_axis = exponent_bound(eps, k, strict=True) + 1
    return CoverSpec(
        dim=dim,
        eps=eps,
        kind=CoverKind.BOX,
        per_axis_count=per_axis,
        total_count=2 ** dim * per_axis ** dim,
        ratio=k,
        factor=c,
    )


def orthants(dim: int) -> Iterator[Tuple[int, ...]]:
    return product((-1, 1), repeat=dim)


def gen_box_cover(dim: int, eps: RationalLike, factor: Optional[RationalLike] = None) -> Iterator[BoxCoverItem]:
    """Lazily emit the parallelepiped cover of H_eps in lexicographic (sigma, a) order.

    Every emitted body dilated by ``factor`` about its center lies in H.
    """
    spec = box_cover_spec(dim, eps, factor)
    for sigma in orthants(dim):
        for alpha in product(range(spec.per_axis_count), repeat=dim):
            body = reflect_body(pp_from_box(u_box(alpha, spec.ratio)), sigma)
            yield CoverIndex(sigma, alpha), body


def rationalized_ratio(dim: int, bits: Optional[int] = None) -> Fraction:
    """Largest p / 2**bits <= r = 1 + 2/(sqrt(n) - 1), computed with integer square roots.

    floor(2**bits * r) = 2**bits + floor((floor(2**(bits+1) sqrt(n)) + 2**(bits+1)) / (n - 1)).
    """
    if dim < 2:
        raise DimensionTooSmallError(dim, 2)
    bits = get_settings().ratio_denominator_bits if bits is None else bits
    scale = 1 << bits
    root = math.isqrt((2 * scale) ** 2 * dim)
    numerator = scale + (root + 2 * scale) // (dim - 1)
    return Fraction(numerator, scale)


def q_box(exponents: Sequence[int], ratio: RationalLike) -> AxisBox:
    """Q(a) in the coordinates of H' = [0, 2]^n."""
    r = to_rational(ratio)
    return AxisBox(
        tuple(r ** -(a + 1) for a in exponents),
        tuple(r ** -a for a in exponents),
    )


def circumscribed_ellipsoid(exponents: Sequence[int], ratio: RationalLike) -> AxisEllipsoid:
    """Axis ellipsoid through all vertices of Q(a): center m*v, s_j = n (1-m)^2 v_j^2."""
    r = to_rational(ratio)
    n = len(exponents)
    m = (1 + 1 / r) / 2
    tops = tuple(r ** -a for a in exponents)
    return AxisEllipsoid(
        tuple(m * v for v in tops),
        tuple(n * (1 - m) ** 2 * v * v for v in tops),
    )


def ellipsoid_cover_spec(dim: int, eps: RationalLike, bits: Optional[int] = None) -> CoverSpec:
    eps = _check_eps(eps)
    r = rationalized_ratio(dim, bits)
    per_axis = exponent_bound(eps, r, strict=True) + 1
    return CoverSpec(
        dim=dim,
        eps=eps,
        kind=CoverKind.ELLIPSOID,
        per_axis_count=per_axis,
        total_count=2 ** dim * per_axis ** dim,
        ratio=r,
    )


def gen_ellipsoid_cover(dim: int, eps: RationalLike, bits: Optional[int] = None) -> Iterator[EllipsoidCoverItem]:
    """Lazily emit the axis-ellipsoid cover of H_eps.

    Raises:
        DimensionTooSmallError: For n = 1 (use the box cover there)
    """
    if dim < 2:
        raise DimensionTooSmallError(dim, 2)
    spec = ellipsoid_cover_spec(dim, eps, bits)
    for sigma in orthants(dim):
        shift = tuple(Fraction(s) for s in sigma)
        flip = tuple(-s for s in sigma)
        for alpha in product(range(spec.per_axis_count), repeat=dim):
            local = circumscribed_ellipsoid(alpha, spec.ratio)
            yield CoverIndex(sigma, alpha), reflect_body(local, flip, shift)


def cover_point_query(cover: Iterable[Tuple[CoverIndex, Body]], x: Sequence[Fraction]) -> Optional[CoverIndex]:
    """First index (in stream order) whose body contains x, or None."""
    for index, body in cover:
        if body_contains(body, x):
            return index
    return None


@lru_cache(maxsize=64)
def _cached_cover(kind: CoverKind, dim: int, eps: Fraction, parameter: Optional[Fraction]) -> Cover:
    if kind == CoverKind.BOX:
        spec = box_cover_spec(dim, eps, parameter)
        bodies = dict(gen_box_cover(dim, eps, parameter))
    else:
        bits = None if parameter is None else int(parameter)
        spec = ellipsoid_cover_spec(dim, eps, bits)
        bodies = dict(gen_ellipsoid_cover(dim, eps, bits))
    logger.info(f"Generated {kind.value} cover: n={dim} eps={eps} bodies={len(bodies)}")
    return Cover(spec=spec, bodies=bodies)


def build_cover(
    kind: Union[CoverKind, str],
    dim: int,
    eps: RationalLike,
    factor: Optional[RationalLike] = None,
    bits: Optional[int] = None,
) -> Cover:
    """Materialize a cover once per (kind, n, eps, parameter); later calls reuse it."""
    kind = CoverKind(kind)
    eps = _check_eps(eps)
    if kind == CoverKind.BOX:
        parameter = _resolve_factor(factor)
    else:
        parameter = None if bits is None else Fraction(bits)
    return _cached_cover(kind, dim, eps, parameter)


def _level_for(value: Fraction, ratio: Fraction, max_exponent: int) -> int:
    """Smallest a <= max_exponent with value >= ratio^-(a+1), i.e. the band holding value."""
    level = 0
    threshold = 1 / ratio
    while level < max_exponent and value < threshold:
        threshold /= ratio
        level += 1
    return level


def locate(cover: Cover, x: Sequence[Fraction]) -> Optional[CoverIndex]:
    """Index of a body containing x.

    The candidate index is computed from the coordinates and confirmed by
    exact membership; if the candidate misses, all bodies are scanned.
    """
    spec = cover.spec
    check_dim(spec.dim, len(x))
    sigma = tuple(1 if xj >= 0 else -1 for xj in x)
    # Both covers band 1 - |x_j| into [ratio^-(a+1), ratio^-a]: for boxes
    # through U(a), for ellipsoids through Q(a) after y = 1 - sigma * x.
    alpha = tuple(_level_for(1 - abs(xj), spec.ratio, spec.max_exponent) for xj in x)
    candidate = CoverIndex(sigma, alpha)
    body = cover.bodies.get(candidate)
    if body is not None and body_contains(body, x):
        return candidate
    return cover_point_query(cover, x)


def grid_points(spec: GridSpec) -> Iterator[Vector]:
    """All points with coordinates 2^-a >= eps, in lexicographic exponent order."""
    values = [Fraction(1, 2 ** a) for a in range(spec.levels)]
    return product(values, repeat=spec.dim)


def _grid_values(spec: GridSpec) -> List[Fraction]:
    return [Fraction(1, 2 ** a) for a in range(spec.levels)]


def _axis_bounds(p: Parallelepiped) -> Tuple[Vector, Vector]:
    half = tuple(1 / abs(p.map[j][j]) for j in range(p.dim))
    return (
        tuple(c - h for c, h in zip(p.center, half)),
        tuple(c + h for c, h in zip(p.center, half)),
    )


def _covered_levels(p: Parallelepiped, values: List[Fraction]) -> List[List[int]]:
    lower, upper = _axis_bounds(p)
    return [
        [a for a, v in enumerate(values) if lo <= v <= hi]
        for lo, hi in zip(lower, upper)
    ]


def count_grid_in_body(body: Body, spec: GridSpec) -> int:
    """Exact number of grid points of G_eps inside ``body``.

    Parallelepipeds must stay in the closed positive orthant after dilation
    by 2 about their center (the placement of the 2^n counting bound); ellipsoids must
    lie in the closed positive orthant themselves.

    Raises:
        PreconditionViolatedError: If the body is placed outside the orthant
    """
    check_dim(spec.dim, body.dim)
    if isinstance(body, Parallelepiped):
        if not pp_scaled_in_positive_orthant(body, 2):
            raise PreconditionViolatedError(
                "Parallelepiped dilated by 2 leaves the positive orthant",
                {"center": [str(c) for c in body.center]},
            )
        if body.is_axis_parallel:
            return math.prod(len(levels) for levels in _covered_levels(body, _grid_values(spec)))
        return sum(1 for g in grid_points(spec) if pp_contains(body, g, 1))
    if not ellipsoid_in_positive_orthant(body):
        raise PreconditionViolatedError(
            "Ellipsoid leaves the positive orthant",
            {"center": [str(c) for c in body.center]},
        )
    return sum(1 for g in grid_points(spec) if body_contains(body, g))


def parallelepiped_grid_bound(dim: int) -> int:
    return 2 ** dim


def ellipsoid_grid_bound(spec: GridSpec) -> int:
    """n * 3^(n-1) * levels, the per-ellipsoid grid count bound."""
    return spec.dim * 3 ** (spec.dim - 1) * spec.levels


def ellipsoid_count_lower_bound(dim: int, eps: RationalLike) -> int:
    """Fewest positive-orthant axis ellipsoids that can cover G_eps."""
    spec = GridSpec(dim, _check_eps(eps))
    per_body = ellipsoid_grid_bound(spec)
    return -(-spec.size // per_body)


def transport_to_positive_orthant(index: CoverIndex, body: Body) -> Body:
    """Apply y = 1 - sigma * x, sending the orthant-sigma part of H to [0, 2]^n."""
    flip = tuple(-s for s in index.orthant)
    return reflect_body(body, flip, ones(index.dim))


def within_log2_bound(per_axis_count: int, eps: RationalLike, offset: int = 1) -> bool:
    """Exact test of per_axis_count <= offset + log2(1/eps)."""
    eps = to_rational(eps)
    exponent = per_axis_count - offset
    if exponent <= 0:
        return True
    return Fraction(2 ** exponent) <= 1 / eps


def log2_bound_value(dim: int, eps: RationalLike, offset: int = 1) -> float:
    """2^n (offset + log2(1/eps))^n as a float, for display only."""
    eps = to_rational(eps)
    return float(2 ** dim * (offset + math.log2(eps.denominator / eps.numerator)) ** dim)


@dataclass
class GridCoverageResult:
    """Outcome of the lower-bound consistency check on the box cover."""

    dim: int
    eps: Fraction
    grid_size: int
    per_orthant_count: int
    max_points_per_body: int
    uncovered: List[Vector] = field(default_factory=list)

    @property
    def per_body_bound_holds(self) -> bool:
        return self.max_points_per_body <= parallelepiped_grid_bound(self.dim)

    @property
    def count_consistent(self) -> bool:
        return self.per_orthant_count * parallelepiped_grid_bound(self.dim) >= self.grid_size

    @property
    def passed(self) -> bool:
        return not self.uncovered and self.per_body_bound_holds and self.count_consistent


def grid_coverage_check(dim: int, eps: RationalLike, factor: Optional[RationalLike] = None) -> GridCoverageResult:
    """Transport each orthant's bodies to the positive orthant and check G_eps against them.

    Every grid point must be covered by the transported bodies of every
    orthant, and no transported body may hold more than 2^n grid points.
    """
    eps = _check_eps(eps)
    cover = build_cover(CoverKind.BOX, dim, eps, factor=factor)
    grid = GridSpec(dim, eps)
    values = _grid_values(grid)
    all_points = set(product(range(grid.levels), repeat=dim))
    max_count = 0
    uncovered: Set[Tuple[int, ...]] = set()
    for sigma in orthants(dim):
        covered: Set[Tuple[int, ...]] = set()
        for index, body in cover:
            if index.orthant != sigma:
                continue
            moved = transport_to_positive_orthant(index, body)
            max_count = max(max_count, count_grid_in_body(moved, grid))
            covered.update(product(*_covered_levels(moved, values)))
        uncovered |= all_points - covered
    return GridCoverageResult(
        dim=dim,
        eps=eps,
        grid_size=grid.size,
        per_orthant_count=cover.spec.per_axis_count ** dim,
        max_points_per_body=max_count,
        uncovered=[tuple(values[a] for a in alpha) for alpha in sorted(uncovered)],
    )


def random_orthant_ellipsoid(rng, dim: int, resolution: int = 64) -> AxisEllipsoid:
    """Seeded axis ellipsoid inside the closed positive orthant with center in (0, 1]^n."""
    center = tuple(Fraction(int(rng.integers(1, resolution + 1)), resolution) for _ in range(dim))
    shrink = tuple(Fraction(int(rng.integers(1, resolution + 1)), resolution) for _ in range(dim))
    return AxisEllipsoid(center, tuple(c * c * s for c, s in zip(center, shrink)))


def body_is_safe(body: Body, factor: RationalLike = 2) -> bool:
    """Parallelepipeds: dilate stays in H. Ellipsoids: body stays in H."""
    outer = unit_cube(body.dim)
    if isinstance(body, Parallelepiped):
        return pp_scaled_inside_box(body, outer, factor)
    return ellipsoid_inside_box(body, outer)


def sign_symmetric_grid(dim: int, eps: RationalLike) -> Iterator[Vector]:
    """Points with coordinates +-2^-a lying in H_eps."""
    eps = _check_eps(eps)
    values = [v for v in _grid_values(GridSpec(dim, eps)) if v <= 1 - eps]
    signed = [s * v for v in values for s in (-1, 1)]
    return product(signed, repeat=dim)


@dataclass
class CoverVerification:
    """Safety and coverage outcome of one cover."""

    kind: CoverKind
    dim: int
    eps: Fraction
    expected_count: int = 0
    count_matches: bool = True
    bodies_checked: int = 0
    points_checked: int = 0
    unsafe: List[CoverIndex] = field(default_factory=list)
    uncovered: List[Vector] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.count_matches and not self.unsafe and not self.uncovered


def verify_cover(
    cover: Cover,
    samples: int = 0,
    seed: int = 0,
    include_grid: bool = True,
) -> CoverVerification:
    """Check the body count, safety of every body and coverage of H_eps.

    Coverage is tested on the corners, the sign-symmetric grid and seeded samples.
    """
    spec = cover.spec
    result = CoverVerification(kind=spec.kind, dim=spec.dim, eps=spec.eps, expected_count=spec.total_count)
    if len(cover.bodies) != spec.total_count:
        result.count_matches = False
        logger.warning(f"Cover holds {len(cover.bodies)} bodies, expected {spec.total_count}")
    factor = spec.factor if spec.factor is not None else 2
    for index, body in cover:
        result.bodies_checked += 1
        if not body_is_safe(body, factor):
            result.unsafe.append(index)

    target = shrunk_cube(spec.dim, spec.eps)
    points: List[Iterable[Vector]] = [target.corners()]
    if include_grid:
        points.append(sign_symmetric_grid(spec.dim, spec.eps))
    rng = make_rng(seed)
    points.append(sample_box(rng, target) for _ in range(samples))
    for stream in points:
        for x in stream:
            result.points_checked += 1
            if not box_contains(target, x) or locate(cover, x) is None:
                result.uncovered.append(tuple(x))
    logger.info(
        f"Verified {spec.kind.value} cover n={spec.dim} eps={spec.eps}: "
        f"{result.bodies_checked} bodies, {result.points_checked} points, passed={result.passed}"
    )
    return result
