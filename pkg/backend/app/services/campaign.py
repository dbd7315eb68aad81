"""
Verification campaigns.

A campaign is planned into a list of cases. Each case is a self-contained,
JSON-ready payload: running a case needs nothing but its payload, which is
what makes any failing case replayable from a report. Cases may run in a
process pool; results are always assembled by case index.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from ..config import get_settings
from ..exceptions import ConfigError, CubeLabException, InvalidEpsError
from ..models.campaign import Campaign, CampaignKind, InstanceGen, OracleKind
from ..models.covering import CoverKind, GridSpec
from ..models.lattice import LatticeInstance
from ..models.rational import (
    format_matrix,
    format_rational,
    format_vector,
    matrix,
    to_rational,
    vector,
)
from ..models.search import BoostConfig, SearchState
from ..schemas.campaign import CampaignSchema, CaseResult, Report
from .boost import (
    approx_cvp,
    boost_call_budget,
    boosted_gap,
    make_search_oracle,
    search_call_budget,
    within_boost_bound,
)
from .covering import (
    build_cover,
    count_grid_in_body,
    ellipsoid_count_lower_bound,
    ellipsoid_grid_bound,
    exponent_bound,
    grid_coverage_check,
    log2_bound_value,
    random_orthant_ellipsoid,
    verify_cover,
    within_log2_bound,
)
from .instances import gen_instances, make_rng, random_slab
from .linalg import inf_norm, sub
from .oracles import (
    AdversarialGapOracle,
    ExactGapOracle,
    GapOracle,
    brute_force_cvp,
    brute_force_ip,
    exact_cvp,
    ip_feasible,
    lattice_vector,
)

logger = logging.getLogger(__name__)

# Counterexample lists are cut to this many entries
MAX_COUNTEREXAMPLES = 10
# Seeded positive-orthant ellipsoids checked per count-audit case
DEFAULT_ELLIPSOIDS = 20


def derive_seed(seed: int, index: int) -> int:
    """Child seed for the index-th (dimension, eps) group or instance of a run."""
    return int(make_rng([seed, index]).integers(0, 2 ** 32))


def make_base_oracle(kind: str, seed: int = 0, alpha: Any = None) -> GapOracle:
    """Constant-gap base oracle by name; alpha defaults to the configured scale factor."""
    alpha = get_settings().scale_factor_value if alpha is None else to_rational(alpha)
    if OracleKind(kind) is OracleKind.ADVERSARIAL:
        return AdversarialGapOracle(seed, alpha)
    return ExactGapOracle(alpha)


def _option(c: Campaign, name: str, default: Any) -> Any:
    for key, value in c.options:
        if key == name:
            return value
    return default


def check_campaign(c: Campaign) -> None:
    """Validate ranges before any case runs.

    Raises:
        ConfigError: On dimensions beyond the allowed cap, bad eps, or bad counts
    """
    settings = get_settings()
    cap = settings.extended_max_dim if c.extended else settings.default_max_dim
    cap = min(cap, settings.hard_max_dim)
    if not c.dims:
        raise ConfigError("campaign needs at least one dimension", field="dims")
    for n in c.dims:
        if not 1 <= n <= cap:
            hint = "" if c.extended else " (use --extended for up to %d)" % settings.extended_max_dim
            raise ConfigError(f"dimension {n} outside [1, {cap}]{hint}", field="dims")
    if c.kind is not CampaignKind.CVP_AUDIT and c.kind is not CampaignKind.IP_AUDIT and not c.eps_list:
        raise ConfigError("campaign needs at least one eps", field="eps_list")
    for eps in c.eps_list:
        if not 0 < eps < 1:
            raise ConfigError(f"eps {eps} outside (0, 1)", field="eps_list")
    if c.samples < 0:
        raise ConfigError("samples must be non-negative", field="samples")
    if c.workers < 1:
        raise ConfigError("workers must be at least 1", field="workers")
    if c.kind is CampaignKind.COVER_VERIFY:
        kind = CoverKind(c.cover_kind)
        if kind is CoverKind.ELLIPSOID and min(c.dims) < 2:
            raise ConfigError("ellipsoid covers need dimension >= 2", field="dims")
    InstanceGen(seed=c.seed, dim=max(c.dims), entry_bound=c.entry_bound, count=c.samples)


def _instance_payload(inst: LatticeInstance) -> Dict[str, Any]:
    payload = {"basis": format_matrix(inst.basis), "target": format_vector(inst.target)}
    if inst.dist is not None:
        payload["dist"] = format_rational(inst.dist)
    return payload


def _instance_from(payload: Dict[str, Any]) -> LatticeInstance:
    dist = payload.get("dist")
    return LatticeInstance(
        matrix(payload["basis"]),
        vector(payload["target"]),
        to_rational(dist) if dist is not None else None,
    )


def plan_cases(c: Campaign) -> List[Dict[str, Any]]:
    """Deterministic list of case payloads for a campaign."""
    check_campaign(c)
    cases: List[Dict[str, Any]] = []
    eps_list = [format_rational(e) for e in c.eps_list]
    factor = _option(c, "factor", None)

    groups = [(n, eps) for n in c.dims for eps in eps_list]

    if c.kind is CampaignKind.COVER_VERIFY:
        for group, (n, eps) in enumerate(groups):
            cases.append({
                "dim": n, "eps": eps, "cover_kind": CoverKind(c.cover_kind).value,
                "samples": c.samples, "seed": derive_seed(c.seed, group), "factor": factor,
            })
    elif c.kind is CampaignKind.COUNT_AUDIT:
        ellipsoids = int(_option(c, "ellipsoids", DEFAULT_ELLIPSOIDS))
        for group, (n, eps) in enumerate(groups):
            cases.append({"dim": n, "eps": eps, "ellipsoids": ellipsoids, "seed": derive_seed(c.seed, group)})
    elif c.kind in (CampaignKind.APPROX_AUDIT, CampaignKind.GAP_BUDGET):
        for group, (n, eps) in enumerate(groups):
            stream_seed = derive_seed(c.seed, group)
            rng = make_rng([stream_seed, 1])
            instances = gen_instances(InstanceGen(stream_seed, n, c.entry_bound, c.samples))
            for i, inst in enumerate(instances):
                payload = _instance_payload(inst)
                payload.update({
                    "eps": eps, "oracle": OracleKind(c.oracle).value,
                    "oracle_seed": derive_seed(stream_seed, i),
                })
                if c.kind is CampaignKind.GAP_BUDGET:
                    payload["dist"] = format_rational(_gap_distance(inst, to_rational(eps), rng))
                cases.append(payload)
    elif c.kind is CampaignKind.CVP_AUDIT:
        for n in c.dims:
            for inst in gen_instances(InstanceGen(derive_seed(c.seed, n), n, c.entry_bound, c.samples)):
                cases.append(_instance_payload(inst))
    elif c.kind is CampaignKind.IP_AUDIT:
        for n in c.dims:
            rng = make_rng(derive_seed(c.seed, n))
            for _ in range(c.samples):
                a, lower, upper = random_slab(rng, n, min(c.entry_bound, 3))
                cases.append({"A": format_matrix(a), "lower": format_vector(lower), "upper": format_vector(upper)})
    return cases


def _gap_distance(inst: LatticeInstance, eps: Fraction, rng) -> Fraction:
    """A query distance near the promise boundary of the (1+eps)-gap problem."""
    exact = exact_cvp(inst.basis, inst.target).dist
    multipliers = (Fraction(1, 2), Fraction(1), 1 + eps, 2 * (1 + eps))
    multiplier = multipliers[int(rng.integers(0, len(multipliers)))]
    return exact * multiplier if exact > 0 else multiplier


def _cut(items: list) -> list:
    return items[:MAX_COUNTEREXAMPLES]


def _run_cover_verify(p: Dict[str, Any]) -> Dict[str, Any]:
    kind = CoverKind(p["cover_kind"])
    eps = to_rational(p["eps"])
    factor = p.get("factor")
    cover = build_cover(kind, p["dim"], eps, factor=factor)
    result = verify_cover(cover, samples=p["samples"], seed=p["seed"])
    metrics = {
        "bodies": result.bodies_checked,
        "points_checked": result.points_checked,
        "expected_count": cover.spec.total_count,
        "count_matches": result.count_matches,
        "unsafe": len(result.unsafe),
        "uncovered": len(result.uncovered),
    }
    counterexample = None
    if not result.passed:
        counterexample = {
            "unsafe": [[list(i.orthant), list(i.exponents)] for i in _cut(result.unsafe)],
            "uncovered": [format_vector(x) for x in _cut(result.uncovered)],
        }
    return {"passed": result.passed, "metrics": metrics, "counterexample": counterexample}


def _run_count_audit(p: Dict[str, Any]) -> Dict[str, Any]:
    n, eps = p["dim"], to_rational(p["eps"])
    cover = build_cover(CoverKind.BOX, n, eps)
    formula = 2 ** n * (exponent_bound(eps, 3) + 1) ** n
    grid = GridSpec(n, eps)
    floor_log = (eps.denominator // eps.numerator).bit_length() - 1
    coverage = grid_coverage_check(n, eps)

    rng = make_rng(p["seed"])
    ellipsoid_bound = ellipsoid_grid_bound(grid)
    ellipsoid_counts = [count_grid_in_body(random_orthant_ellipsoid(rng, n), grid) for _ in range(p["ellipsoids"])]
    ellipsoid_max = max(ellipsoid_counts, default=0)

    metrics: Dict[str, Any] = {
        "emitted": len(cover),
        "formula": formula,
        "log2_bound": round(log2_bound_value(n, eps), 6),
        "within_bound": within_log2_bound(cover.spec.per_axis_count, eps, offset=1),
        "grid_size": grid.size,
        "grid_formula": (1 + floor_log) ** n,
        "grid_max_per_body": coverage.max_points_per_body,
        "grid_bound_per_body": 2 ** n,
        "grid_covered": not coverage.uncovered,
        "count_consistent": coverage.count_consistent,
        "ellipsoids_checked": len(ellipsoid_counts),
        "ellipsoid_grid_max": ellipsoid_max,
        "ellipsoid_grid_bound": ellipsoid_bound,
    }
    passed = (
        metrics["emitted"] == formula
        and metrics["within_bound"]
        and grid.size == metrics["grid_formula"]
        and coverage.passed
        and ellipsoid_max <= ellipsoid_bound
    )
    if n >= 2:
        ellipsoid_cover = build_cover(CoverKind.ELLIPSOID, n, eps)
        per_orthant = len(ellipsoid_cover) // 2 ** n
        lower_bound = ellipsoid_count_lower_bound(n, eps)
        metrics.update({
            "ellipsoid_emitted": len(ellipsoid_cover),
            "ellipsoid_lower_bound": lower_bound,
        })
        passed = passed and per_orthant >= lower_bound
    counterexample = None
    if coverage.uncovered:
        counterexample = {"uncovered": [format_vector(x) for x in _cut(coverage.uncovered)]}
    return {"passed": passed, "metrics": metrics, "counterexample": counterexample}


def _run_approx_audit(p: Dict[str, Any]) -> Dict[str, Any]:
    inst = _instance_from(p)
    eps = to_rational(p["eps"])
    base = make_base_oracle(p["oracle"], p["oracle_seed"])
    gap = make_search_oracle(eps, base)
    exact = exact_cvp(inst.basis, inst.target)
    power = 1 + gap.config.eps
    bracket_failures: List[Dict[str, Any]] = []

    def observe(state: SearchState) -> None:
        if exact.dist == 0:
            return
        if not power ** state.L <= exact.dist <= power ** state.U:
            bracket_failures.append({"step": state.step, "L": state.L, "U": state.U})

    result = approx_cvp(inst.basis, inst.target, eps, gap, audit=True, observer=observe)
    budget = search_call_budget(result.initial_gap)
    ratio_ok = result.achieved_dist <= (1 + eps) * exact.dist
    witness_ok = lattice_vector(inst.basis, result.coeffs) == tuple(result.vector)
    metrics = {
        "achieved_dist": format_rational(result.achieved_dist),
        "exact_dist": format_rational(exact.dist),
        "ratio": format_rational(result.ratio) if result.ratio is not None else None,
        "gap_calls": result.oracle_calls,
        "base_calls": base.calls,
        "search_calls": result.search_calls,
        "search_budget": budget,
        "steps": result.steps,
        "initial_gap": result.initial_gap,
    }
    passed = ratio_ok and witness_ok and result.search_calls <= budget and not bracket_failures
    counterexample = {"bracket": _cut(bracket_failures)} if bracket_failures else None
    return {"passed": passed, "metrics": metrics, "counterexample": counterexample}


def _run_gap_budget(p: Dict[str, Any]) -> Dict[str, Any]:
    inst = _instance_from(p)
    eps = to_rational(p["eps"])
    base = make_base_oracle(p["oracle"], p["oracle_seed"])
    exact = exact_cvp(inst.basis, inst.target)
    result = boosted_gap(inst, BoostConfig(eps=eps, oracle=base))
    budget = boost_call_budget(inst.dim, eps, base.alpha)
    promised = exact.dist <= inst.dist / (1 + eps)
    sound = not (result.is_empty and promised)
    witness_ok = True
    if result.is_found:
        witness_ok = (
            lattice_vector(inst.basis, result.coeffs) == tuple(result.vector)
            and inf_norm(sub(result.vector, inst.target)) <= inst.dist
        )
    metrics = {
        "answer": "found" if result.is_found else "empty",
        "exact_dist": format_rational(exact.dist),
        "promise_holds": promised,
        "base_calls": base.calls,
        "call_budget": budget,
        "within_log2_bound": within_boost_bound(inst.dim, eps, base.alpha),
    }
    passed = sound and witness_ok and base.calls <= budget and metrics["within_log2_bound"]
    return {"passed": passed, "metrics": metrics, "counterexample": None}


def _run_cvp_audit(p: Dict[str, Any]) -> Dict[str, Any]:
    inst = _instance_from(p)
    exact = exact_cvp(inst.basis, inst.target)
    reference = brute_force_cvp(inst.basis, inst.target)
    metrics = {
        "exact_dist": format_rational(exact.dist),
        "brute_force_dist": format_rational(reference.dist),
        "same_witness": exact.coeffs == reference.coeffs,
    }
    return {"passed": exact.dist == reference.dist, "metrics": metrics, "counterexample": None}


def _run_ip_audit(p: Dict[str, Any]) -> Dict[str, Any]:
    a, lower, upper = matrix(p["A"]), vector(p["lower"]), vector(p["upper"])
    via_cvp = ip_feasible(a, lower, upper)
    reference = brute_force_ip(a, lower, upper)
    point_ok = True
    if via_cvp is not None:
        y = lattice_vector(a, via_cvp)
        point_ok = all(lo <= v <= hi for lo, v, hi in zip(lower, y, upper))
    metrics = {
        "reduction_feasible": via_cvp is not None,
        "brute_force_feasible": reference is not None,
        "point": list(via_cvp) if via_cvp is not None else None,
    }
    passed = (via_cvp is None) == (reference is None) and point_ok
    return {"passed": passed, "metrics": metrics, "counterexample": None}


CASE_RUNNERS: Dict[CampaignKind, Callable[[Dict[str, Any]], Dict[str, Any]]] = {
    CampaignKind.COVER_VERIFY: _run_cover_verify,
    CampaignKind.COUNT_AUDIT: _run_count_audit,
    CampaignKind.APPROX_AUDIT: _run_approx_audit,
    CampaignKind.GAP_BUDGET: _run_gap_budget,
    CampaignKind.CVP_AUDIT: _run_cvp_audit,
    CampaignKind.IP_AUDIT: _run_ip_audit,
}


def run_case(kind: CampaignKind, payload: Dict[str, Any], index: int = 0) -> CaseResult:
    """Run one case from its payload alone.

    Domain errors (an unsound oracle, a diverged search, a broken bracket)
    fail the case and are recorded; anything else propagates.
    """
    kind = CampaignKind(kind)
    try:
        outcome = CASE_RUNNERS[kind](payload)
    except CubeLabException as exc:
        logger.warning(f"Case {index} ({kind.value}) raised {type(exc).__name__}: {exc.message}")
        return CaseResult(
            index=index,
            kind=kind,
            passed=False,
            params=payload,
            error={"type": type(exc).__name__, "message": exc.message, "details": exc.details},
        )
    return CaseResult(
        index=index,
        kind=kind,
        passed=outcome["passed"],
        params=payload,
        metrics=outcome["metrics"],
        counterexample=outcome["counterexample"],
    )


def _run_indexed(args) -> CaseResult:
    kind, payload, index = args
    return run_case(kind, payload, index)


def run_campaign(c: Campaign, workers: Optional[int] = None) -> Report:
    """Plan and run every case of a campaign; the report depends only on (kind, params, seed).

    Raises:
        ConfigError: On invalid ranges
    """
    cases = plan_cases(c)
    workers = c.workers if workers is None else workers
    jobs = [(c.kind, payload, index) for index, payload in enumerate(cases)]
    logger.info(f"Running {c.kind.value} campaign: {len(jobs)} cases, seed={c.seed}, workers={workers}")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_indexed, jobs))
    else:
        results = [_run_indexed(job) for job in jobs]
    results.sort(key=lambda r: r.index)
    failed = sum(1 for r in results if not r.passed)
    logger.info(f"Campaign {c.kind.value} finished: {len(results) - failed}/{len(results)} passed")
    return Report(
        campaign=CampaignSchema.from_model(c),
        passed=failed == 0,
        total=len(results),
        failed=failed,
        cases=results,
    )


def replay_case(report: Report, index: int) -> CaseResult:
    """Re-run one serialized case in isolation."""
    for case in report.cases:
        if case.index == index:
            return run_case(case.kind, case.params, index)
    raise ConfigError(f"report has no case {index}", field="case")


def campaign_from_params(
    kind: str,
    dims: List[int],
    eps_list: List[Any],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    oracle: str = "exact",
    cover_kind: str = "box",
    entry_bound: int = 5,
    extended: bool = False,
    workers: Optional[int] = None,
    options: Optional[Dict[str, str]] = None,
) -> Campaign:
    """Build a Campaign from loose (CLI or JSON) values, filling defaults from settings."""
    settings = get_settings()
    try:
        eps_values = tuple(to_rational(e) for e in eps_list)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid eps: {exc}", field="eps_list") from exc
    for eps in eps_values:
        if not 0 < eps < 1:
            raise InvalidEpsError(eps)
    return Campaign(
        kind=CampaignKind(kind),
        dims=tuple(dims),
        eps_list=eps_values,
        samples=settings.default_samples if samples is None else samples,
        seed=settings.default_seed if seed is None else seed,
        oracle=OracleKind(oracle),
        cover_kind=cover_kind,
        entry_bound=entry_bound,
        extended=extended,
        workers=settings.campaign_workers if workers is None else workers,
        options=tuple(sorted((options or {}).items())),
    )
