"""
CVP commands: exact enumeration and the (1+eps)-approximation.
"""

import argparse
import logging

from ..config import get_settings
from ..models.campaign import OracleKind
from ..models.rational import format_rational, format_vector
from ..schemas.lattice import ApproxAnswer, CvpAnswer, InstanceFile
from ..services.boost import approx_cvp, make_search_oracle, search_call_budget
from ..services.campaign import make_base_oracle
from ..services.oracles import exact_cvp
from .common import emit, load_schema, rational_arg

logger = logging.getLogger(__name__)


def exact(args: argparse.Namespace) -> int:
    inst = load_schema(args.input, InstanceFile).to_model()
    solution = exact_cvp(inst.basis, inst.target)
    answer = CvpAnswer.from_model(solution)
    summary = [
        f"closest vector {format_vector(solution.vector)}",
        f"coefficients {list(solution.coeffs)}, distance {format_rational(solution.dist)}",
    ]
    emit(answer, args, summary)
    return 0


def approx(args: argparse.Namespace) -> int:
    inst = load_schema(args.input, InstanceFile).to_model()
    seed = get_settings().default_seed if args.seed is None else args.seed
    base = make_base_oracle(args.oracle, seed)
    gap = make_search_oracle(args.eps, base)
    result = approx_cvp(inst.basis, inst.target, args.eps, gap, audit=args.audit)
    answer = ApproxAnswer.from_model(
        result,
        eps=args.eps,
        oracle=args.oracle,
        base_calls=base.calls,
        search_budget=search_call_budget(result.initial_gap),
    )
    summary = [
        f"vector {format_vector(result.vector)} at distance {format_rational(result.achieved_dist)}",
        f"gap calls {result.oracle_calls} (gallop {result.gallop_calls}, search {result.search_calls}), "
        f"base-oracle calls {base.calls}",
    ]
    if result.exact_dist is not None:
        ratio = result.ratio
        summary.append(
            f"exact distance {format_rational(result.exact_dist)}, ratio "
            f"{format_rational(ratio) if ratio is not None else '-'} (<= {format_rational(1 + args.eps)})"
        )
    emit(answer, args, summary)
    return 0


def register(subparsers, parents) -> None:
    cvp = subparsers.add_parser("cvp", help="Closest vector in the l-inf norm")
    actions = cvp.add_subparsers(dest="action", required=True)

    p = actions.add_parser("exact", parents=parents, help="Exact closest vector by enumeration")
    p.add_argument("--in", dest="input", required=True, help="Instance JSON {basis, target}")
    p.set_defaults(handler=exact)

    p = actions.add_parser("approx", parents=parents, help="(1+eps)-approximate closest vector via boosted gap oracles")
    p.add_argument("--in", dest="input", required=True, help="Instance JSON {basis, target}")
    p.add_argument("--eps", type=rational_arg, required=True, help="eps in (0, 1) as p/q")
    p.add_argument("--oracle", choices=[k.value for k in OracleKind], default=OracleKind.EXACT.value)
    p.add_argument("--audit", action="store_true", help="Also compute the exact distance and the ratio")
    p.set_defaults(handler=approx)
