"""
Boosting a constant-gap oracle to a (1+eps)-gap solver, and the binary search
that turns a (1+delta)-gap solver into a (1+eps)-approximation.

Boosting rescales the instance to D = 1, covers t + H_delta with the
parallelepiped cover and asks the base oracle once per body. A body P with
map E and center d becomes the instance (E A, E d) at distance alpha: a Found
answer lies in P dilated by alpha, hence inside t + H; an Empty answer means
P holds no lattice point. If every body is empty, no lattice point lies within
D / (1 + eps).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..config import get_settings
from ..exceptions import (
    BracketInvariantError,
    ConfigError,
    DimensionMismatchError,
    GapOracleUnsoundError,
    SearchDivergedError,
)
from ..models.covering import CoverKind
from ..models.lattice import GapResult, LatticeInstance
from ..models.rational import Matrix, RationalLike, format_rational, to_rational
from ..models.search import ApproxConfig, ApproxResult, BoostConfig, SearchState
from .covering import build_cover, within_log2_bound
from .geometry import pp_contains, translate_body
from .linalg import inf_norm, is_integral, mat_vec, scale, scale_matrix, sub
from .oracles import (
    GapOracle,
    basis_inverse,
    exact_cvp,
    lattice_vector,
    recheck_witness,
    transform_instance,
)

logger = logging.getLogger(__name__)

# Upper limit on galloping steps in either direction
MAX_GALLOP = 4096


def boosted_gap(inst: LatticeInstance, cfg: BoostConfig) -> GapResult:
    """Solve the (1 + cfg.eps)-gap problem with one base-oracle call per cover body.

    Returns Found on the first body (in cover order) whose query succeeds;
    Empty certifies d(t, Lambda) > D / (1 + eps).

    Raises:
        OracleUnsoundError: If a base-oracle witness fails its exact recheck
    """
    oracle: GapOracle = cfg.oracle
    factor = oracle.alpha
    if factor <= 1:
        raise ConfigError("boosting needs a base oracle with alpha > 1", field="alpha")
    if inst.dist is None:
        raise ValueError("boosted_gap needs a distance D")
    n = inst.dim
    inv_d = 1 / inst.dist
    basis = scale_matrix(inv_d, inst.basis)
    target = scale(inv_d, inst.target)
    cover = build_cover(CoverKind.BOX, n, cfg.delta, factor=factor)
    queried = 0
    for index, body in cover:
        body = translate_body(body, target)
        query = transform_instance(basis, body).with_dist(factor)
        queried += 1
        answer = oracle.query(query)
        if answer.is_empty:
            continue
        recheck_witness(query, answer)
        scaled_point = lattice_vector(basis, answer.coeffs)
        if not pp_contains(body, scaled_point, factor):
            raise GapOracleUnsoundError(
                "Witness lies outside the dilated parallelepiped",
                {"index": [list(index.orthant), list(index.exponents)], "coeffs": list(answer.coeffs)},
            )
        vector = lattice_vector(inst.basis, answer.coeffs)
        if inf_norm(sub(vector, inst.target)) > inst.dist:
            raise GapOracleUnsoundError("Boosted witness is farther than D", {"coeffs": list(answer.coeffs)})
        logger.debug(f"boosted_gap found witness at body {queried}/{len(cover)}")
        return GapResult.found(vector, answer.coeffs)
    logger.debug(f"boosted_gap: all {queried} bodies empty")
    return GapResult.empty()


def boost_call_budget(dim: int, eps: RationalLike, factor: RationalLike = 2) -> int:
    """Exact number of bodies, hence worst-case base-oracle calls, of one boosted_gap."""
    eps = to_rational(eps)
    return len(build_cover(CoverKind.BOX, dim, eps / (1 + eps), factor=factor))


def within_boost_bound(dim: int, eps: RationalLike, factor: RationalLike = 2) -> bool:
    """Exact check of 2^n (A+1)^n <= 2^n (2 + log2(1/eps))^n."""
    eps = to_rational(eps)
    cover = build_cover(CoverKind.BOX, dim, eps / (1 + eps), factor=factor)
    return within_log2_bound(cover.spec.per_axis_count, eps, offset=2)


class BoostedGapOracle(GapOracle):
    """(1 + eps)-gap oracle built from a constant-gap base oracle."""

    name = "boosted"

    def __init__(self, base: GapOracle, eps: RationalLike):
        self.config = BoostConfig(eps=to_rational(eps), oracle=base)
        super().__init__(1 + self.config.eps)
        self.base = base

    def _answer(self, instance: LatticeInstance) -> GapResult:
        return boosted_gap(instance, self.config)


def _first_true(pred: Callable[[int], bool]) -> int:
    """Smallest integer k with pred(k), for pred monotone from False to True."""
    if pred(0):
        hi, lo, step = 0, -1, 1
        while pred(lo):
            hi = lo
            step *= 2
            lo = -step
    else:
        lo, hi, step = 0, 1, 1
        while not pred(hi):
            lo = hi
            step *= 2
            hi = step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def ceil_log1p(value: RationalLike, delta: RationalLike) -> int:
    """Smallest integer k with (1 + delta)^k >= value, by exact powers."""
    value, base = to_rational(value), 1 + to_rational(delta)
    if value <= 0 or base <= 1:
        raise ValueError("ceil_log1p needs value > 0 and delta > 0")
    return _first_true(lambda k: base ** k >= value)


def floor_log1p(value: RationalLike, delta: RationalLike) -> int:
    """Largest integer k with (1 + delta)^k <= value."""
    value, base = to_rational(value), 1 + to_rational(delta)
    if value <= 0 or base <= 1:
        raise ValueError("floor_log1p needs value > 0 and delta > 0")
    return _first_true(lambda k: base ** k > value) - 1


def ceil_log2(m: int) -> int:
    return max(m - 1, 0).bit_length()


def search_call_budget(initial_gap: int) -> int:
    """Gap calls allowed after galloping: the while-loop steps plus the final call."""
    return ceil_log2(max(initial_gap, 1)) + 2


def search_step_bound(initial_gap: int) -> int:
    """Smallest j with 2^-j M_0 + 2 < 3, from the recurrence M_j <= 2^-j M_0 + 2."""
    return max(initial_gap, 0).bit_length()


def make_search_oracle(eps: RationalLike, base: GapOracle, cap: Optional[RationalLike] = None) -> BoostedGapOracle:
    """(1 + delta)-gap oracle for approx_cvp with delta = min(eps/5, cap)."""
    cap = get_settings().search_delta_cap_value if cap is None else to_rational(cap)
    config = ApproxConfig.for_eps(to_rational(eps), cap)
    return BoostedGapOracle(base, config.search_delta)


def approx_cvp(
    basis: Matrix,
    target: Sequence[Fraction],
    eps: RationalLike,
    gap: GapOracle,
    audit: bool = False,
    observer: Optional[Callable[[SearchState], None]] = None,
    cap: Optional[RationalLike] = None,
) -> ApproxResult:
    """(1 + eps)-approximate closest vector through a (1 + delta)-gap oracle.

    The bracket (L, U) is initialised by galloping over D = 2^k, then shrunk
    by binary search while U - L >= 3; a last query at (1+delta)^(U+1)
    produces the answer.

    Args:
        basis: Nonsingular lattice basis (columns)
        target: Target vector
        eps: Accuracy in (0, 1)
        gap: Gap oracle with alpha <= 1 + min(eps/5, 1/2)
        audit: Also compute the exact distance
        observer: Called with the search state after galloping and after every step

    Raises:
        GapOracleUnsoundError: If a witness fails its recheck or the final query comes back empty
        SearchDivergedError: If the search exceeds its iteration cap
        BracketInvariantError: If a step fails to halve the bracket
    """
    target = tuple(to_rational(t) for t in target)
    if len(basis) != len(target):
        raise DimensionMismatchError(len(basis), len(target))
    cap = get_settings().search_delta_cap_value if cap is None else to_rational(cap)
    config = ApproxConfig.for_eps(to_rational(eps), cap)
    delta = config.search_delta
    if gap.alpha > 1 + delta:
        raise ConfigError(
            f"gap oracle alpha {gap.alpha} exceeds 1 + delta = {1 + delta}", field="gap"
        )
    base = 1 + delta
    instance = LatticeInstance(basis, target)

    exact = exact_cvp(basis, target) if audit else None
    centers = mat_vec(basis_inverse(basis), target)
    if is_integral(centers):
        coeffs = tuple(int(c) for c in centers)
        return ApproxResult(
            lattice_vector(basis, coeffs), coeffs, Fraction(0), 0,
            exact_dist=Fraction(0) if audit else None,
        )

    state = SearchState(L=0, U=0, delta=delta)
    best: list = [None, None]

    def ask(dist: Fraction) -> GapResult:
        state.calls += 1
        query = instance.with_dist(dist)
        answer = gap.query(query)
        if answer.is_found:
            recheck_witness(query, answer)
            achieved = inf_norm(sub(answer.vector, target))
            if best[1] is None or achieved < best[1]:
                best[0], best[1] = answer, achieved
        return answer

    def witness_exponent(answer: GapResult) -> int:
        return ceil_log1p(inf_norm(sub(answer.vector, target)), delta)

    # Galloping: D = 2^k upward until Found, then downward while Found.
    k = 0
    answer = ask(Fraction(1))
    while answer.is_empty:
        k += 1
        if k > MAX_GALLOP:
            raise SearchDivergedError("Upward galloping did not find a lattice vector")
        answer = ask(Fraction(2) ** k)
    state.U = witness_exponent(answer)
    if k > 0:
        state.L = floor_log1p(Fraction(2) ** (k - 1) / base, delta)
    else:
        j = 0
        while True:
            j += 1
            if j > MAX_GALLOP:
                raise SearchDivergedError("Downward galloping never came back empty")
            trial = Fraction(1, 2 ** j)
            answer = ask(trial)
            if answer.is_empty:
                state.L = floor_log1p(trial / base, delta)
                break
            state.U = min(state.U, witness_exponent(answer))
    state.L = min(state.L, state.U)
    gallop_calls = state.calls
    initial_gap = state.gap
    iteration_cap = ceil_log2(max(initial_gap, 1)) + 4
    logger.debug(f"approx_cvp gallop: L={state.L} U={state.U} calls={gallop_calls}")
    if observer is not None:
        observer(state)

    while state.gap >= 3:
        state.step += 1
        if state.step > iteration_cap:
            raise SearchDivergedError(details={"L": state.L, "U": state.U, "cap": iteration_cap})
        previous = state.gap
        midpoint = state.L + -(-previous // 2)
        answer = ask(base ** midpoint)
        if answer.is_found:
            state.U = witness_exponent(answer)
        else:
            state.L = midpoint - 1
        # A very close witness can push U below L; the witness still certifies the upper side.
        state.L = min(state.L, state.U)
        if 2 * state.gap > previous + 2:
            raise BracketInvariantError(
                "Binary-search step did not halve the bracket",
                {"previous": previous, "current": state.gap},
            )
        logger.debug(f"approx_cvp step {state.step}: L={state.L} U={state.U}")
        if observer is not None:
            observer(state)

    final = ask(base ** (state.U + 1))
    if final.is_empty:
        raise GapOracleUnsoundError(
            "Final gap query came back empty inside the bracket",
            {"U": state.U, "D": format_rational(base ** (state.U + 1))},
        )
    chosen, achieved = best
    logger.info(
        f"approx_cvp n={len(target)} eps={config.eps}: dist={achieved} calls={state.calls} steps={state.step}"
    )
    return ApproxResult(
        vector=chosen.vector,
        coeffs=chosen.coeffs,
        achieved_dist=achieved,
        oracle_calls=state.calls,
        exact_dist=exact.dist if exact is not None else None,
        gallop_calls=gallop_calls,
        search_calls=state.calls - gallop_calls,
        steps=state.step,
        initial_gap=initial_gap,
        lower=state.L,
        upper=state.U,
    )
