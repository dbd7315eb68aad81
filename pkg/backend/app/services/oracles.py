"""
Exact closest-vector enumeration and gap oracles for the l-inf norm.

The enumerator walks integer coefficient vectors depth-first in basis column
order. From ||Ax - t||_inf <= R it follows that x = A^{-1}(t + e) with
||e||_inf <= R, so coefficient i ranges over (A^{-1}t)_i +- R * sum_j |A^{-1}_ij|.
Partial assignments are pruned row by row with exact interval arithmetic on
the columns still free.

Gap oracles answer the promise problem "find v with ||v - t|| <= D, or
assert that every lattice vector is farther than D / alpha".
"""

from __future__ import annotations

import hashlib
import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from ..config import get_enumeration_limit
from ..exceptions import (
    DegenerateSlabError,
    DimensionLimitExceededError,
    DimensionMismatchError,
    OracleUnsoundError,
    SingularBasisError,
    SingularMatrixError,
)
from ..models.geometry import Parallelepiped
from ..models.lattice import CvpSolution, GapResult, LatticeInstance
from ..models.rational import Matrix, RationalLike, Vector, format_matrix, format_rational, format_vector, to_rational
from .instances import make_rng
from .linalg import (
    check_dim,
    inf_norm,
    invert,
    is_integral,
    mat_mul,
    mat_vec,
    round_nearest,
    scale_rows,
    sub,
)

logger = logging.getLogger(__name__)


def basis_inverse(basis: Matrix) -> Matrix:
    try:
        return invert(basis)
    except SingularMatrixError as exc:
        raise SingularBasisError(details=exc.details) from exc


def lattice_vector(basis: Matrix, coeffs: Sequence[int]) -> Vector:
    return mat_vec(basis, tuple(Fraction(c) for c in coeffs))


class _Enumerator:
    """Depth-first coefficient enumeration with a (possibly shrinking) radius."""

    def __init__(self, basis: Matrix, target: Vector, inverse: Optional[Matrix] = None):
        check_dim(len(basis), len(target))
        self.n = len(basis)
        self.basis = basis
        self.target = target
        self.inverse = inverse if inverse is not None else basis_inverse(basis)
        self.columns = [tuple(row[j] for row in basis) for j in range(self.n)]
        self.centers = mat_vec(self.inverse, target)
        self.spreads = [sum((abs(a) for a in row), Fraction(0)) for row in self.inverse]

    def coefficient_range(self, k: int, radius: Fraction) -> Tuple[int, int]:
        c, w = self.centers[k], radius * self.spreads[k]
        return math.ceil(c - w), math.floor(c + w)

    def _lower_bound(self, k: int, residual: Sequence[Fraction], radius: Fraction) -> Fraction:
        """Smallest possible ||Ax - t||_inf given fixed columns < k and boxed columns >= k."""
        ranges = [self.coefficient_range(j, radius) for j in range(k, self.n)]
        if any(lo > hi for lo, hi in ranges):
            return radius + 1
        bound = Fraction(0)
        for r in range(self.n):
            lo = hi = residual[r]
            for (clo, chi), j in zip(ranges, range(k, self.n)):
                a = self.basis[r][j]
                if a > 0:
                    lo += a * clo
                    hi += a * chi
                elif a < 0:
                    lo += a * chi
                    hi += a * clo
            if lo > 0:
                bound = max(bound, lo)
            elif hi < 0:
                bound = max(bound, -hi)
        return bound

    def search(self, radius: Fraction, shrink: bool) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
        """Lexicographically first coefficients within ``radius``.

        With ``shrink`` the radius tightens to each improvement, so the
        result is the lexicographically smallest minimizer among vectors
        within the starting radius.
        """
        best: List = [None, radius]
        residual0 = tuple(-t for t in self.target)

        def visit(k: int, prefix: Tuple[int, ...], residual: Tuple[Fraction, ...]) -> bool:
            if k == self.n:
                d = inf_norm(residual)
                incumbent = best[0]
                if d < best[1] or (d == best[1] and (incumbent is None or prefix < incumbent[0])):
                    best[0] = (prefix, d)
                    best[1] = d
                    return not shrink
                return False
            lo, hi = self.coefficient_range(k, best[1])
            x = lo
            while x <= hi:
                nxt = tuple(res + x * a for res, a in zip(residual, self.columns[k]))
                if self._lower_bound(k + 1, nxt, best[1]) <= best[1]:
                    if visit(k + 1, prefix + (x,), nxt):
                        return True
                if shrink:
                    hi = min(hi, self.coefficient_range(k, best[1])[1])
                x += 1
            return False

        visit(0, (), residual0)
        return best[0]


def _check_limit(dim: int) -> None:
    limit = get_enumeration_limit()
    if dim > limit:
        raise DimensionLimitExceededError(dim, limit)


def exact_cvp(basis: Matrix, target: Sequence[Fraction], inverse: Optional[Matrix] = None) -> CvpSolution:
    """Closest lattice vector in the l-inf norm, exactly.

    Among all minimizers the lexicographically smallest coefficient vector
    wins. The incumbent starts at the rounding of A^{-1} t.

    Raises:
        SingularBasisError: If the basis is singular
        DimensionLimitExceededError: Above the configured enumeration limit
    """
    target = tuple(Fraction(t) for t in target)
    _check_limit(len(target))
    enum = _Enumerator(basis, target, inverse)
    if is_integral(enum.centers):
        coeffs = tuple(int(c) for c in enum.centers)
        return CvpSolution(lattice_vector(basis, coeffs), coeffs, Fraction(0))
    start = round_nearest(enum.centers)
    radius = inf_norm(sub(lattice_vector(basis, start), target))
    found = enum.search(radius, shrink=True)
    # The rounding itself lies within ``radius``, so the search cannot come back empty.
    coeffs, dist = found
    logger.debug(f"exact_cvp n={len(target)} dist={dist} coeffs={coeffs}")
    return CvpSolution(lattice_vector(basis, coeffs), coeffs, dist)


def first_within(
    basis: Matrix,
    target: Sequence[Fraction],
    radius: RationalLike,
    inverse: Optional[Matrix] = None,
) -> Optional[CvpSolution]:
    """Lexicographically first lattice vector within ``radius`` of target, or None."""
    target = tuple(Fraction(t) for t in target)
    _check_limit(len(target))
    radius = to_rational(radius)
    enum = _Enumerator(basis, target, inverse)
    found = enum.search(radius, shrink=False)
    if found is None:
        return None
    coeffs, dist = found
    return CvpSolution(lattice_vector(basis, coeffs), coeffs, dist)


def sweep_cvp(basis: Matrix, target: Sequence[Fraction], radius: int) -> CvpSolution:
    """Reference minimum over all coefficients in [-radius, radius]^n (no pruning)."""
    target = tuple(Fraction(t) for t in target)
    best: Optional[CvpSolution] = None
    for coeffs in product(range(-radius, radius + 1), repeat=len(target)):
        v = lattice_vector(basis, coeffs)
        d = inf_norm(sub(v, target))
        if best is None or d < best.dist:
            best = CvpSolution(v, coeffs, d)
    return best


def brute_force_cvp(basis: Matrix, target: Sequence[Fraction]) -> CvpSolution:
    """Reference minimum for integer bases, found by sweeping lattice membership over Z^n.

    Lambda(A) is a sublattice of Z^n, so every candidate within R of t is an
    integer point y of the box t +- R; y belongs to the lattice iff A^{-1} y is
    integral. R is the distance of the rounded point A round(A^{-1} t). Ties
    go to the lexicographically smallest coefficient vector.
    """
    target = tuple(Fraction(t) for t in target)
    if any(Fraction(a).denominator != 1 for row in basis for a in row):
        raise ValueError("brute_force_cvp needs an integer basis")
    inverse = basis_inverse(basis)
    start = round_nearest(mat_vec(inverse, target))
    radius = inf_norm(sub(lattice_vector(basis, start), target))
    axes = [range(math.ceil(t - radius), math.floor(t + radius) + 1) for t in target]
    best: Optional[CvpSolution] = None
    for point in product(*axes):
        y = tuple(Fraction(v) for v in point)
        coeffs = mat_vec(inverse, y)
        if not is_integral(coeffs):
            continue
        d = inf_norm(sub(y, target))
        coeffs = tuple(int(c) for c in coeffs)
        if best is None or (d, coeffs) < (best.dist, best.coeffs):
            best = CvpSolution(y, coeffs, d)
    return best


def recheck_witness(instance: LatticeInstance, result: GapResult, threshold: Optional[Fraction] = None) -> None:
    """Exact recheck of a Found answer: lattice membership and distance.

    Raises:
        OracleUnsoundError: If the witness is not a lattice vector within ``threshold``
    """
    threshold = instance.dist if threshold is None else threshold
    if result.is_empty:
        return
    details = {
        "vector": format_vector(result.vector),
        "coeffs": list(result.coeffs),
        "threshold": format_rational(threshold),
    }
    if tuple(result.vector) != lattice_vector(instance.basis, result.coeffs):
        raise OracleUnsoundError("Witness is not basis * coeffs", details)
    if inf_norm(sub(result.vector, instance.target)) > threshold:
        raise OracleUnsoundError("Witness lies outside the claimed distance", details)


def instance_digest(instance: LatticeInstance) -> int:
    """Stable 64-bit digest of an instance (independent of Python hash seeding)."""
    text = repr((
        format_matrix(instance.basis),
        format_vector(instance.target),
        format_rational(instance.dist) if instance.dist is not None else None,
    ))
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


class GapOracle(ABC):
    """Solver for the alpha-gap problem.

    ``query`` returns Found(v) with ||v - t||_inf <= D, or Empty meaning
    every lattice vector is farther than D / alpha.
    """

    name = "gap"

    def __init__(self, alpha: RationalLike):
        alpha = to_rational(alpha)
        if alpha < 1:
            raise ValueError(f"gap alpha must be at least 1, got {alpha}")
        self.alpha = alpha
        self.calls = 0

    def query(self, instance: LatticeInstance) -> GapResult:
        if instance.dist is None:
            raise ValueError("gap queries need a distance D")
        self.calls += 1
        result = self._answer(instance)
        logger.debug(f"{self.name} oracle call {self.calls}: D={instance.dist} found={result.is_found}")
        return result

    @abstractmethod
    def _answer(self, instance: LatticeInstance) -> GapResult:
        ...


class ExactGapOracle(GapOracle):
    """Gap oracle backed by exact enumeration; a Found witness is the closest vector.

    Sound for every alpha >= 1.
    """

    name = "exact"

    def _answer(self, instance: LatticeInstance) -> GapResult:
        solution = exact_cvp(instance.basis, instance.target)
        if solution.dist > instance.dist:
            return GapResult.empty()
        return GapResult.found(solution.vector, solution.coeffs)


def exact_as_gap(alpha: RationalLike = 2) -> GapOracle:
    return ExactGapOracle(alpha)


class AdversarialGapOracle(GapOracle):
    """Sound but unhelpful alpha-gap oracle.

    Answers Empty whenever no lattice vector is within D / alpha and a seeded
    coin, keyed by the instance, allows it; when it answers Found it returns
    the farthest witness within D among a few neighbours of the first hit.
    """

    name = "adversarial"

    def __init__(self, seed: int = 0, alpha: RationalLike = 2):
        super().__init__(alpha)
        self.seed = seed

    def _coin(self, instance: LatticeInstance) -> bool:
        rng = make_rng([self.seed, instance_digest(instance)])
        return bool(rng.integers(0, 2))

    def _worst_witness(self, instance: LatticeInstance, hit: CvpSolution) -> GapResult:
        candidates = [hit.coeffs]
        for j in range(instance.dim):
            for step in (-1, 1):
                moved = list(hit.coeffs)
                moved[j] += step
                candidates.append(tuple(moved))
        best_coeffs, best_dist = None, Fraction(-1)
        for coeffs in candidates:
            d = inf_norm(sub(lattice_vector(instance.basis, coeffs), instance.target))
            if d <= instance.dist and d > best_dist:
                best_coeffs, best_dist = coeffs, d
        return GapResult.found(lattice_vector(instance.basis, best_coeffs), best_coeffs)

    def _answer(self, instance: LatticeInstance) -> GapResult:
        inverse = basis_inverse(instance.basis)
        forced = first_within(instance.basis, instance.target, instance.dist / self.alpha, inverse)
        if forced is not None:
            return self._worst_witness(instance, forced)
        hit = first_within(instance.basis, instance.target, instance.dist, inverse)
        if hit is None or self._coin(instance):
            return GapResult.empty()
        return self._worst_witness(instance, hit)


def adversarial_2gap(seed: int = 0) -> GapOracle:
    return AdversarialGapOracle(seed, alpha=2)


def transform_instance(basis: Matrix, p: Parallelepiped) -> LatticeInstance:
    """Send P to the unit l-inf ball: B = E A and t = E d.

    x in Lambda(A) lies in P (in P dilated by s) iff E x in Lambda(B) is
    within 1 (within s) of t. The caller attaches the distance.
    """
    check_dim(len(basis), p.dim)
    return LatticeInstance(mat_mul(p.map, basis), mat_vec(p.map, p.center))


def box_ip_to_cvp(a: Matrix, lower: Sequence[Fraction], upper: Sequence[Fraction]) -> LatticeInstance:
    """Reduce "is there x in Z^n with l <= Ax <= u" to a CVP-inf instance with D = 1/2.

    Row i is rescaled by 1/(u_i - l_i) so that every slab has unit width and
    t is the midpoint of the rescaled slab.

    Raises:
        DegenerateSlabError: If some u_i <= l_i
        SingularBasisError: If A is singular
    """
    lower = tuple(to_rational(v) for v in lower)
    upper = tuple(to_rational(v) for v in upper)
    check_dim(len(a), len(lower))
    check_dim(len(a), len(upper))
    widths = []
    for i, (lo, hi) in enumerate(zip(lower, upper)):
        if hi <= lo:
            raise DegenerateSlabError(i, {"lower": format_rational(lo), "upper": format_rational(hi)})
        widths.append(hi - lo)
    basis_inverse(a)
    factors = tuple(1 / w for w in widths)
    target = tuple((lo + hi) / 2 * f for lo, hi, f in zip(lower, upper, factors))
    return LatticeInstance(scale_rows(factors, a), target, Fraction(1, 2))


def ip_feasible(a: Matrix, lower: Sequence[Fraction], upper: Sequence[Fraction]) -> Optional[Tuple[int, ...]]:
    """An integer x with l <= Ax <= u, or None, decided through box_ip_to_cvp and exact_cvp."""
    instance = box_ip_to_cvp(a, lower, upper)
    solution = exact_cvp(instance.basis, instance.target)
    if solution.dist <= instance.dist:
        return solution.coeffs
    return None


def brute_force_ip(a: Matrix, lower: Sequence[Fraction], upper: Sequence[Fraction]) -> Optional[Tuple[int, ...]]:
    """Reference search over the integer points of A^{-1} applied to the slab's bounding box."""
    lower = tuple(to_rational(v) for v in lower)
    upper = tuple(to_rational(v) for v in upper)
    n = len(a)
    if len(lower) != n or len(upper) != n:
        raise DimensionMismatchError(n, len(lower))
    inverse = basis_inverse(a)
    # x = A^{-1} y with y in the box [l, u]
    ranges = []
    for row in inverse:
        lo = sum((c * (lower[j] if c > 0 else upper[j]) for j, c in enumerate(row)), Fraction(0))
        hi = sum((c * (upper[j] if c > 0 else lower[j]) for j, c in enumerate(row)), Fraction(0))
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    for coeffs in product(*ranges):
        y = lattice_vector(a, coeffs)
        if all(lo <= yj <= hi for lo, yj, hi in zip(lower, y, upper)):
            return coeffs
    return None
