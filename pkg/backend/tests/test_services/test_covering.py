"""
Tests for cube coverings, the counting grid and cover verification.
"""

from fractions import Fraction

import pytest

from app.exceptions import DimensionTooSmallError, InvalidEpsError, PreconditionViolatedError
from app.models.covering import Cover, CoverIndex, CoverKind, GridSpec
from app.models.geometry import AxisBox, AxisEllipsoid, shrunk_cube
from app.models.rational import vector
from app.services.covering import (
    body_is_safe,
    build_cover,
    circumscribed_ellipsoid,
    count_grid_in_body,
    cover_point_query,
    ellipsoid_count_lower_bound,
    ellipsoid_grid_bound,
    exponent_bound,
    gen_box_cover,
    gen_ellipsoid_cover,
    grid_coverage_check,
    grid_points,
    locate,
    log2_bound_value,
    q_box,
    rationalized_ratio,
    sign_symmetric_grid,
    u_box,
    verify_cover,
    within_log2_bound,
)
from app.services.geometry import body_contains, box_contains, ellipsoid_contains, pp_from_box


class TestExponentBound:
    """Test the exact exponent ranges."""

    @pytest.mark.parametrize("eps,base,expected", [
        (Fraction(1, 3), 3, 0),
        (Fraction(1, 10), 3, 2),
        (Fraction(1, 8), 2, 3),
        (Fraction(1, 100), 3, 4),
    ])
    def test_examples(self, eps, base, expected):
        assert exponent_bound(eps, base) == expected

    def test_strict_and_non_strict_differ_on_powers(self):
        """At eps = 1/9 the strict bound excludes 3^-2, the non-strict one keeps it."""
        assert exponent_bound(Fraction(1, 9), 3, strict=True) == 1
        assert exponent_bound(Fraction(1, 9), 3, strict=False) == 2

    @pytest.mark.parametrize("eps", [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3, 2)])
    def test_invalid_eps(self, eps):
        with pytest.raises(InvalidEpsError):
            exponent_bound(eps, 3)


class TestBoxCover:
    """Test the parallelepiped cover of H_eps."""

    def test_one_dimension(self):
        """n=1, eps=1/2: the bodies of [-2/3, 0] and [0, 2/3]."""
        bodies = list(gen_box_cover(1, Fraction(1, 2)))
        assert len(bodies) == 2
        assert bodies[0][0] == CoverIndex((-1,), (0,))
        assert bodies[1][1] == pp_from_box(AxisBox.of([0], ["2/3"]))

    @pytest.mark.parametrize("dim,eps,count", [
        (2, Fraction(1, 10), 36),
        (2, Fraction(2, 3), 4),
        (3, Fraction(1, 2), 8),
        (1, Fraction(1, 100), 10),
    ])
    def test_counts(self, dim, eps, count):
        """2^n (exponent_bound(eps, 3) + 1)^n bodies."""
        cover = build_cover(CoverKind.BOX, dim, eps)
        assert len(cover) == count
        assert cover.spec.total_count == count
        assert within_log2_bound(cover.spec.per_axis_count, eps)

    def test_generation_order(self):
        """Indices come out sorted."""
        indices = [index for index, _ in gen_box_cover(2, Fraction(1, 10))]
        assert indices == sorted(indices)

    @pytest.mark.parametrize("dim", [1, 2, 3])
    @pytest.mark.parametrize("eps", [Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)])
    def test_every_body_is_safe(self, dim, eps):
        """Every body dilated by 2 lies in [-1, 1]^n."""
        cover = build_cover(CoverKind.BOX, dim, eps)
        assert all(body_is_safe(body, 2) for _, body in cover)

    def test_larger_factor_shrinks_ratio(self):
        """Dilation 3 gives k = 2 and a box cover safe for that dilation."""
        cover = build_cover(CoverKind.BOX, 2, Fraction(1, 10), factor=3)
        assert cover.spec.ratio == 2
        assert all(body_is_safe(body, 3) for _, body in cover)
        assert verify_cover(cover, samples=50, seed=3).passed

    def test_u_box(self):
        assert u_box((0, 1)) == AxisBox.of([0, "2/3"], ["2/3", "8/9"])

    def test_invalid_eps_is_raised_on_first_item(self):
        with pytest.raises(InvalidEpsError):
            next(gen_box_cover(2, Fraction(1)))


class TestPointQuery:
    """Test point location in a cover."""

    def test_shared_boundary_first_wins(self):
        cover = list(gen_box_cover(1, Fraction(1, 2)))
        assert cover_point_query(cover, vector([0])) == CoverIndex((-1,), (0,))

    def test_point_outside_target(self):
        """9/10 is not in H_{1/2}, and no body holds it."""
        cover = list(gen_box_cover(1, Fraction(1, 2)))
        assert cover_point_query(cover, vector(["9/10"])) is None

    def test_corner_of_target(self):
        cover = build_cover(CoverKind.BOX, 2, Fraction(1, 10))
        assert locate(cover, vector(["-9/10", "9/10"])) is not None
        assert cover_point_query(cover, vector(["-9/10", "9/10"])) is not None

    def test_locate_agrees_with_membership(self):
        """The located body really contains the point."""
        cover = build_cover(CoverKind.BOX, 2, Fraction(1, 10))
        for x in shrunk_cube(2, Fraction(1, 10)).corners():
            index = locate(cover, x)
            assert index is not None
            assert body_contains(cover.bodies[index], x)


class TestEllipsoidCover:
    """Test the axis-ellipsoid cover."""

    def test_ratio_is_exact_for_four_dimensions(self):
        """r = 1 + 2/(sqrt(4) - 1) = 3 is rational, so r-hat = 3."""
        assert rationalized_ratio(4) == 3

    def test_ratio_below_irrational_value(self):
        """For n = 2, r = 3 + 2 sqrt(2); r-hat is just below it."""
        r_hat = rationalized_ratio(2)
        assert r_hat.denominator <= 2 ** 16
        assert (r_hat - 3) ** 2 < 8
        assert (r_hat + Fraction(1, 2 ** 16) - 3) ** 2 > 8

    def test_circumscribed_ellipsoid_for_top_cell(self):
        """Center 2/3 and squared semi-axes 4/9 at n = 4."""
        e = circumscribed_ellipsoid((0, 0, 0, 0), 3)
        assert e.center == vector(["2/3"] * 4)
        assert e.sq_semi_axes == vector(["4/9"] * 4)
        for corner in q_box((0, 0, 0, 0), 3).corners():
            assert ellipsoid_contains(e, corner)

    def test_near_one_eps(self):
        cover = build_cover(CoverKind.ELLIPSOID, 2, Fraction(99, 100))
        assert cover.spec.per_axis_count == 1
        assert len(cover) == 4

    def test_counts_for_two_dimensions(self):
        cover = build_cover(CoverKind.ELLIPSOID, 2, Fraction(1, 10))
        assert cover.spec.per_axis_count == exponent_bound(Fraction(1, 10), cover.spec.ratio) + 1
        assert cover.spec.per_axis_count == 2
        assert len(cover) == 16

    @pytest.mark.parametrize("dim", [2, 3])
    def test_every_ellipsoid_is_safe(self, dim):
        cover = build_cover(CoverKind.ELLIPSOID, dim, Fraction(1, 10))
        assert all(body_is_safe(body) for _, body in cover)

    def test_verify(self):
        cover = build_cover(CoverKind.ELLIPSOID, 2, Fraction(1, 10))
        result = verify_cover(cover, samples=200, seed=11)
        assert result.passed
        assert result.bodies_checked == 16

    def test_one_dimension_rejected(self):
        with pytest.raises(DimensionTooSmallError):
            next(gen_ellipsoid_cover(1, Fraction(1, 2)))
        with pytest.raises(DimensionTooSmallError):
            rationalized_ratio(1)


class TestGrid:
    """Test the grid G_eps and the counting bounds."""

    @pytest.mark.parametrize("dim,eps,size", [
        (2, Fraction(1, 8), 16),
        (1, Fraction(1, 2), 2),
        (3, Fraction(1, 2), 8),
    ])
    def test_grid_size(self, dim, eps, size):
        points = list(grid_points(GridSpec(dim, eps)))
        assert len(points) == size
        assert all(min(p) >= eps for p in points)

    def test_one_dimensional_grid(self):
        assert set(grid_points(GridSpec(1, Fraction(1, 2)))) == {(Fraction(1),), (Fraction(1, 2),)}

    def test_count_in_box(self):
        """[1/2, 1]^2 holds the four points with coordinates 1/2 and 1."""
        body = pp_from_box(AxisBox.of(["1/2", "1/2"], [1, 1]))
        assert count_grid_in_body(body, GridSpec(2, Fraction(1, 4))) == 4

    def test_count_in_interval(self):
        body = pp_from_box(AxisBox.of(["1/2"], [1]))
        assert count_grid_in_body(body, GridSpec(1, Fraction(1, 2))) == 2

    def test_count_in_ellipsoid(self):
        """The disc of radius 1/2 about (1/2, 1/2) holds 10 of the 16 grid points."""
        spec = GridSpec(2, Fraction(1, 8))
        e = AxisEllipsoid.of(["1/2", "1/2"], ["1/4", "1/4"])
        count = count_grid_in_body(e, spec)
        assert count == 10
        assert count <= ellipsoid_grid_bound(spec) == 24

    def test_precondition_parallelepiped(self):
        """A body whose dilate crosses zero is rejected."""
        body = pp_from_box(AxisBox.of(["1/4"], [1]))
        with pytest.raises(PreconditionViolatedError):
            count_grid_in_body(body, GridSpec(1, Fraction(1, 4)))

    def test_precondition_ellipsoid(self):
        e = AxisEllipsoid.of(["1/4"], ["1/4"])
        with pytest.raises(PreconditionViolatedError):
            count_grid_in_body(e, GridSpec(1, Fraction(1, 4)))

    @pytest.mark.parametrize("dim,eps", [
        (1, Fraction(1, 100)),
        (2, Fraction(1, 10)),
        (3, Fraction(1, 2)),
    ])
    def test_grid_coverage_check(self, dim, eps):
        """Transported bodies cover G_eps and hold at most 2^n grid points each."""
        result = grid_coverage_check(dim, eps)
        assert result.passed
        assert result.max_points_per_body <= 2 ** dim
        assert result.per_orthant_count * 2 ** dim >= result.grid_size

    def test_ellipsoid_lower_bound(self):
        """ceil(|G_eps| / (n 3^(n-1) levels))."""
        assert ellipsoid_count_lower_bound(2, Fraction(1, 8)) == 1
        assert ellipsoid_count_lower_bound(3, Fraction(1, 100)) == 2

    def test_sign_symmetric_grid_stays_in_target(self):
        target = shrunk_cube(2, Fraction(1, 10))
        points = list(sign_symmetric_grid(2, Fraction(1, 10)))
        assert points
        assert all(box_contains(target, p) for p in points)


class TestBounds:
    """Test the log2 bound helpers."""

    def test_within_log2_bound(self):
        assert within_log2_bound(3, Fraction(1, 10), offset=2)
        assert within_log2_bound(4, Fraction(1, 8))
        assert not within_log2_bound(5, Fraction(1, 8))

    def test_log2_bound_value(self):
        assert log2_bound_value(1, Fraction(1, 2)) == 4.0
        assert log2_bound_value(2, Fraction(1, 4), offset=2) == 64.0


class TestVerifyCover:
    """Test the combined safety and coverage check."""

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_box_cover_passes(self, dim):
        cover = build_cover(CoverKind.BOX, dim, Fraction(1, 10))
        result = verify_cover(cover, samples=200, seed=7)
        assert result.passed
        assert result.points_checked >= 200 + 2 ** dim

    def test_reproducible(self):
        cover = build_cover(CoverKind.BOX, 2, Fraction(1, 2))
        first = verify_cover(cover, samples=20, seed=5)
        second = verify_cover(cover, samples=20, seed=5)
        assert first.points_checked == second.points_checked
        assert first.passed and second.passed

    def test_missing_body_fails_count(self):
        """A cover one body short is rejected even where the rest still covers."""
        cover = build_cover(CoverKind.BOX, 2, Fraction(1, 2))
        dropped = next(iter(cover.bodies))
        short = Cover(cover.spec, {i: b for i, b in cover.bodies.items() if i != dropped})
        result = verify_cover(short, samples=20, seed=5)
        assert not result.count_matches
        assert result.expected_count == cover.spec.total_count
        assert result.bodies_checked == cover.spec.total_count - 1
        assert not result.passed

    def test_full_cover_count_matches(self):
        result = verify_cover(build_cover(CoverKind.BOX, 1, Fraction(1, 2)))
        assert result.count_matches
        assert result.expected_count == 2
