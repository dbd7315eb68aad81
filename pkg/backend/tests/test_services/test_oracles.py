"""
Tests for exact CVP enumeration, the gap oracles and the instance transforms.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import (
    DegenerateSlabError,
    DimensionLimitExceededError,
    OracleUnsoundError,
    SingularBasisError,
)
from app.models.campaign import InstanceGen
from app.models.geometry import Parallelepiped
from app.models.lattice import GapResult, LatticeInstance
from app.models.rational import diagonal, identity, matrix, vector
from app.services.geometry import pp_contains
from app.services.instances import gen_instances, make_rng
from app.services.linalg import inf_norm, mat_vec, sub
from app.services.oracles import (
    adversarial_2gap,
    box_ip_to_cvp,
    brute_force_cvp,
    brute_force_ip,
    exact_as_gap,
    exact_cvp,
    first_within,
    ip_feasible,
    lattice_vector,
    recheck_witness,
    sweep_cvp,
    transform_instance,
)


class TestExactCvp:
    """Test the exact l-inf closest vector solver."""

    def test_rounding_in_integer_lattice(self):
        solution = exact_cvp(identity(2), vector(["2/5", "2/5"]))
        assert solution.vector == (0, 0)
        assert solution.dist == Fraction(2, 5)

    def test_one_dimension(self, line_instance):
        solution = exact_cvp(line_instance.basis, line_instance.target)
        assert solution.vector == (5,)
        assert solution.coeffs == (5,)
        assert solution.dist == Fraction(3, 10)

    def test_skew_basis_matches_sweep(self, skew_basis):
        """The lattice {(2a, a + b)} is at distance 1 from (1, 0)."""
        solution = exact_cvp(skew_basis, vector([1, 0]))
        assert solution.dist == 1
        assert solution.dist == sweep_cvp(skew_basis, vector([1, 0]), 3).dist

    def test_lexicographic_tie_break(self):
        """0 and 1 are both at distance 1/2 from 1/2; the smaller coefficient wins."""
        solution = exact_cvp(identity(1), vector(["1/2"]))
        assert solution.coeffs == (0,)
        assert exact_cvp(identity(1), vector(["1/2"])).coeffs == solution.coeffs

    def test_target_in_lattice(self, skew_basis):
        solution = exact_cvp(skew_basis, vector([4, 5]))
        assert solution.dist == 0
        assert solution.vector == (4, 5)

    def test_singular_basis(self):
        with pytest.raises(SingularBasisError):
            exact_cvp(matrix([[1, 2], [2, 4]]), vector([0, 0]))

    def test_dimension_limit(self, settings_env):
        settings_env(ENUMERATION_LIMIT=1)
        with pytest.raises(DimensionLimitExceededError):
            exact_cvp(identity(2), vector(["1/3", "1/3"]))

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_matches_brute_force(self, dim):
        """Exact distances agree with the lattice-membership sweep on seeded instances."""
        for inst in gen_instances(InstanceGen(seed=40 + dim, dim=dim, entry_bound=5, count=8)):
            exact = exact_cvp(inst.basis, inst.target)
            reference = brute_force_cvp(inst.basis, inst.target)
            assert exact.dist == reference.dist
            assert exact.coeffs == reference.coeffs
            assert lattice_vector(inst.basis, exact.coeffs) == exact.vector

    def test_matches_coefficient_sweep_on_small_bases(self):
        """Entries in [-1, 1] keep every closest coefficient inside the sweep box."""
        for inst in gen_instances(InstanceGen(seed=7, dim=2, entry_bound=1, count=5)):
            assert exact_cvp(inst.basis, inst.target).dist == sweep_cvp(inst.basis, inst.target, 8).dist

    def test_brute_force_needs_integer_basis(self):
        with pytest.raises(ValueError):
            brute_force_cvp(diagonal(["1/2"]), vector([0]))


class TestFirstWithin:
    """Test the radius-bounded search behind the adversarial gap oracle."""

    def test_first_hit_is_lexicographic(self):
        hit = first_within(identity(1), vector(["53/10"]), 1)
        assert hit.coeffs == (5,)

    def test_nothing_within_radius(self):
        assert first_within(identity(2), vector(["1/2", "1/2"]), Fraction(2, 5)) is None


class TestExactGapOracle:
    """Test the exact-backed gap oracle."""

    def test_empty_below_distance(self, half_integer_instance, exact_oracle):
        result = exact_oracle.query(half_integer_instance.with_dist(Fraction(2, 5)))
        assert result.is_empty

    def test_found_on_boundary(self, half_integer_instance, exact_oracle):
        result = exact_oracle.query(half_integer_instance.with_dist(Fraction(1, 2)))
        assert result.is_found
        assert result.vector == (0, 0)

    def test_found_one_dimension(self, line_instance, exact_oracle):
        result = exact_oracle.query(line_instance.with_dist(1))
        assert result.vector == (5,)
        assert exact_oracle.calls == 1

    def test_witness_is_the_closest_vector(self, line_instance, exact_oracle):
        """With D=2 around 53/10, every integer from 4 to 7 qualifies; the answer is 5."""
        result = exact_oracle.query(line_instance.with_dist(2))
        assert result.vector == exact_cvp(line_instance.basis, line_instance.target).vector == (5,)

    def test_witness_matches_exact_cvp(self, exact_oracle):
        for inst in gen_instances(InstanceGen(seed=61, dim=2, entry_bound=4, count=12)):
            closest = exact_cvp(inst.basis, inst.target)
            result = exact_oracle.query(inst.with_dist(closest.dist + 1))
            assert result.vector == closest.vector
            assert result.coeffs == closest.coeffs

    def test_needs_distance(self, line_instance, exact_oracle):
        with pytest.raises(ValueError):
            exact_oracle.query(line_instance)

    def test_alpha_below_one(self):
        with pytest.raises(ValueError):
            exact_as_gap(Fraction(1, 2))


class TestAdversarialOracle:
    """Test the sound but unhelpful 2-gap oracle."""

    def test_forced_found(self):
        """Exact distance D/4 leaves no room for Empty."""
        inst = LatticeInstance(identity(1), vector(["1/4"]), Fraction(1))
        for seed in range(5):
            result = adversarial_2gap(seed).query(inst)
            assert result.is_found
            recheck_witness(inst, result)

    def test_forced_empty(self):
        """Exact distance 2D must be Empty."""
        inst = LatticeInstance(identity(1), vector(["1/2"]), Fraction(1, 4))
        assert adversarial_2gap(3).query(inst).is_empty

    def test_gap_region_is_seeded(self):
        """Inside (D/2, D] either answer is sound, and the same seed gives the same answer."""
        inst = LatticeInstance(identity(1), vector(["3/4"]), Fraction(1, 3))
        answers = [adversarial_2gap(seed).query(inst) for seed in range(16)]
        for answer in answers:
            recheck_witness(inst, answer)
        assert adversarial_2gap(5).query(inst) == adversarial_2gap(5).query(inst)

    def test_witness_may_be_far(self):
        """Found answers stay within D but need not be closest."""
        inst = LatticeInstance(identity(2), vector(["1/10", "1/10"]), Fraction(2))
        result = adversarial_2gap(0).query(inst)
        assert result.is_found
        assert inf_norm(sub(result.vector, inst.target)) <= 2
        assert result.vector != (0, 0)


class TestRecheck:
    """Test the exact witness recheck."""

    def test_forged_vector(self, half_integer_instance):
        inst = half_integer_instance.with_dist(1)
        with pytest.raises(OracleUnsoundError):
            recheck_witness(inst, GapResult(vector([1, 1]), (0, 0)))

    def test_too_far(self, half_integer_instance):
        inst = half_integer_instance.with_dist(Fraction(1, 4))
        with pytest.raises(OracleUnsoundError):
            recheck_witness(inst, GapResult.found(vector([0, 0]), (0, 0)))

    def test_empty_passes(self, half_integer_instance):
        recheck_witness(half_integer_instance.with_dist(1), GapResult.empty())


class TestTransformInstance:
    """Test B = E A and t = E d."""

    def test_identity(self):
        p = Parallelepiped(identity(2), vector([0, 0]))
        inst = transform_instance(identity(2), p)
        assert inst.basis == identity(2)
        assert inst.target == (0, 0)

    def test_one_dimension(self):
        """0 lies on the boundary of P = [0, 2/3] and at distance 1 from t' = 1."""
        p = Parallelepiped(diagonal([3]), vector(["1/3"]))
        inst = transform_instance(identity(1), p)
        assert inst.basis == ((3,),)
        assert inst.target == (1,)
        assert pp_contains(p, vector([0]))
        assert inf_norm(sub(vector([0]), inst.target)) == 1

    def test_two_dimensions(self):
        p = Parallelepiped(diagonal([2, 2]), vector(["1/2", "1/2"]))
        inst = transform_instance(identity(2), p)
        image = lattice_vector(inst.basis, (1, 0))
        assert image == (2, 0)
        assert inf_norm(sub(image, inst.target)) == 1
        assert pp_contains(p, vector([1, 0]))

    @settings(max_examples=1000, deadline=None)
    @given(
        st.lists(st.integers(-3, 3), min_size=2, max_size=2),
        st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=6), min_size=2, max_size=2),
        st.sampled_from([1, 2]),
    )
    def test_membership_equivalence(self, coeffs, center, s):
        """x in P dilated by s iff E x is within s of E d."""
        basis = matrix([[2, 1], [0, 1]])
        p = Parallelepiped.of([[1, "1/2"], [0, 2]], center)
        inst = transform_instance(basis, p)
        x = lattice_vector(basis, coeffs)
        image = lattice_vector(inst.basis, coeffs)
        assert image == mat_vec(p.map, x)
        assert pp_contains(p, x, s) == (inf_norm(sub(image, inst.target)) <= s)

    def test_membership_equivalence_seeded_sweep(self):
        """A thousand seeded lattice points against a skewed parallelepiped and its dilation."""
        rng = make_rng(2024)
        basis = matrix([[2, 1], [0, 1]])
        p = Parallelepiped.of([[1, "1/2"], [0, 2]], ["1/3", "-1/2"])
        inst = transform_instance(basis, p)
        for _ in range(1000):
            coeffs = tuple(int(c) for c in rng.integers(-4, 5, size=2))
            s = int(rng.integers(1, 3))
            x = lattice_vector(basis, coeffs)
            image = lattice_vector(inst.basis, coeffs)
            assert pp_contains(p, x, s) == (inf_norm(sub(image, inst.target)) <= s)


class TestBoxIp:
    """Test the reduction of box integer programs to CVP."""

    def test_unit_box(self):
        inst = box_ip_to_cvp(identity(2), vector([0, 0]), vector([1, 1]))
        assert inst.target == (Fraction(1, 2), Fraction(1, 2))
        assert inst.dist == Fraction(1, 2)
        assert inst.basis == identity(2)
        assert ip_feasible(identity(2), vector([0, 0]), vector([1, 1])) is not None

    def test_empty_interval(self):
        """[1/4, 3/4] holds no integer: the rescaled lattice 2Z is at distance 1 from t = 1."""
        inst = box_ip_to_cvp(identity(1), vector(["1/4"]), vector(["3/4"]))
        assert inst.basis == ((2,),)
        assert inst.target == (1,)
        assert ip_feasible(identity(1), vector(["1/4"]), vector(["3/4"])) is None
        assert brute_force_ip(identity(1), vector(["1/4"]), vector(["3/4"])) is None

    def test_feasible_triangle(self):
        a = matrix([[1, 0], [1, 1]])
        lower, upper = vector([0, 0]), vector([2, 2])
        inst = box_ip_to_cvp(a, lower, upper)
        assert exact_cvp(inst.basis, inst.target).dist <= Fraction(1, 2)
        x = ip_feasible(a, lower, upper)
        y = lattice_vector(a, x)
        assert all(lo <= v <= hi for lo, v, hi in zip(lower, y, upper))

    def test_degenerate_slab(self):
        with pytest.raises(DegenerateSlabError):
            box_ip_to_cvp(identity(2), vector([0, 1]), vector([1, 1]))

    def test_singular_system(self):
        with pytest.raises(SingularBasisError):
            box_ip_to_cvp(matrix([[1, 1], [1, 1]]), vector([0, 0]), vector([1, 1]))
