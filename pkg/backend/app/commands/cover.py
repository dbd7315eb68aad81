"""
Cover commands: generate, verify and count.
"""

import argparse
import logging

from ..config import get_settings
from ..exceptions import ConfigError
from ..models.campaign import CampaignKind
from ..models.covering import CoverKind
from ..models.rational import format_rational, format_vector
from ..schemas.campaign import CaseResult
from ..schemas.common import CubeLabSchema
from ..schemas.geometry import CoverFile
from ..services.campaign import run_case
from ..services.covering import build_cover, verify_cover
from .common import emit, load_schema, rational_arg, summary_table

logger = logging.getLogger(__name__)


class VerificationAnswer(CubeLabSchema):
    kind: CoverKind
    dim: int
    eps: str
    expected_count: int
    count_matches: bool
    bodies_checked: int
    points_checked: int
    passed: bool
    unsafe: list
    uncovered: list


def _cover_from_args(args: argparse.Namespace):
    if getattr(args, "input", None):
        return load_schema(args.input, CoverFile).to_model()
    if args.dim is None or args.eps is None:
        raise ConfigError("cover verify needs --in FILE or both --dim and --eps", field="dim")
    return build_cover(CoverKind(args.kind), args.dim, args.eps, factor=args.factor, bits=args.bits)


def gen(args: argparse.Namespace) -> int:
    cover = build_cover(CoverKind(args.kind), args.dim, args.eps, factor=args.factor, bits=args.bits)
    spec = cover.spec
    summary = [
        f"{spec.kind.value} cover of H_eps: n={spec.dim} eps={format_rational(spec.eps)}",
        f"  per-axis count {spec.per_axis_count}, total {spec.total_count}, ratio {format_rational(spec.ratio)}",
    ]
    emit(CoverFile.from_model(cover), args, summary)
    return 0


def verify(args: argparse.Namespace) -> int:
    cover = _cover_from_args(args)
    seed = get_settings().default_seed if args.seed is None else args.seed
    samples = get_settings().default_samples if args.samples is None else args.samples
    result = verify_cover(cover, samples=samples, seed=seed)
    answer = VerificationAnswer(
        kind=result.kind,
        dim=result.dim,
        eps=format_rational(result.eps),
        expected_count=result.expected_count,
        count_matches=result.count_matches,
        bodies_checked=result.bodies_checked,
        points_checked=result.points_checked,
        passed=result.passed,
        unsafe=[[list(i.orthant), list(i.exponents)] for i in result.unsafe],
        uncovered=[format_vector(x) for x in result.uncovered],
    )
    summary = [
        f"{answer.kind.value} cover n={answer.dim} eps={answer.eps}: "
        f"{answer.bodies_checked} bodies, {answer.points_checked} points",
        "PASS" if answer.passed else (
            f"FAIL: {len(answer.unsafe)} unsafe, {len(answer.uncovered)} uncovered"
            + ("" if answer.count_matches else f", expected {answer.expected_count} bodies")
        ),
    ]
    emit(answer, args, summary)
    return 0 if result.passed else 1


def count(args: argparse.Namespace) -> int:
    seed = get_settings().default_seed if args.seed is None else args.seed
    payload = {"dim": args.dim, "eps": format_rational(args.eps), "ellipsoids": args.ellipsoids, "seed": seed}
    case: CaseResult = run_case(CampaignKind.COUNT_AUDIT, payload)
    rows = [[key, str(value)] for key, value in case.metrics.items()]
    summary = summary_table(rows, ["quantity", "value"]) + ["PASS" if case.passed else "FAIL"]
    emit(case, args, summary)
    return 0 if case.passed else 1


def register(subparsers, parents) -> None:
    cover = subparsers.add_parser("cover", help="Cube coverings of H_eps")
    actions = cover.add_subparsers(dest="action", required=True)

    def shape_args(p: argparse.ArgumentParser, required: bool) -> None:
        p.add_argument("--dim", type=int, required=required, help="Dimension n")
        p.add_argument("--eps", type=rational_arg, required=required, help="eps in (0, 1) as p/q")
        p.add_argument("--kind", choices=[k.value for k in CoverKind], default=CoverKind.BOX.value)
        p.add_argument("--factor", type=rational_arg, default=None, help="Dilation factor c > 1 (box covers)")
        p.add_argument("--bits", type=int, default=None, help="Denominator bits of r-hat (ellipsoid covers)")

    p = actions.add_parser("gen", parents=parents, help="Generate a cover and emit it as JSON")
    shape_args(p, required=True)
    p.set_defaults(handler=gen)

    p = actions.add_parser("verify", parents=parents, help="Check safety and coverage of a cover")
    p.add_argument("--in", dest="input", type=str, default="", help="Cover JSON written by 'cover gen'")
    shape_args(p, required=False)
    p.add_argument("--samples", type=int, default=None, help="Seeded samples of H_eps (default from settings)")
    p.set_defaults(handler=verify)

    p = actions.add_parser("count", parents=parents, help="Counts of bodies and grid points against their bounds")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--eps", type=rational_arg, required=True)
    p.add_argument("--ellipsoids", type=int, default=20, help="Seeded positive-orthant ellipsoids to count")
    p.set_defaults(handler=count)
