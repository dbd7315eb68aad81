"""
Gap command: the alpha-gap problem, either straight from a constant-gap oracle
or as the (1+eps)-gap problem through boosting.
"""

import argparse
import logging

from ..config import get_settings
from ..exceptions import ConfigError
from ..models.campaign import OracleKind
from ..models.rational import format_rational, format_vector
from ..models.search import BoostConfig
from ..schemas.lattice import GapAnswer, InstanceFile
from ..services.boost import boost_call_budget, boosted_gap
from ..services.campaign import make_base_oracle
from ..services.linalg import inf_norm, sub
from ..services.oracles import recheck_witness
from .common import emit, load_schema, rational_arg

logger = logging.getLogger(__name__)


def solve(args: argparse.Namespace) -> int:
    inst = load_schema(args.input, InstanceFile).to_model()
    if args.dist is not None:
        inst = inst.with_dist(args.dist)
    if inst.dist is None:
        raise ConfigError("gap solve needs a distance: put \"dist\" in the instance or pass --dist", field="dist")
    seed = get_settings().default_seed if args.seed is None else args.seed
    base = make_base_oracle(args.oracle, seed, args.alpha)

    if args.eps is None:
        result = base.query(inst)
        recheck_witness(inst, result)
        alpha, budget = base.alpha, None
    else:
        result = boosted_gap(inst, BoostConfig(eps=args.eps, oracle=base))
        alpha, budget = 1 + args.eps, boost_call_budget(inst.dim, args.eps, base.alpha)

    witness_dist = inf_norm(sub(result.vector, inst.target)) if result.is_found else None
    answer = GapAnswer.from_model(
        result,
        alpha=alpha,
        dist=inst.dist,
        oracle_calls=base.calls,
        witness_dist=witness_dist,
        call_budget=budget,
    )
    if result.is_found:
        headline = f"FOUND {format_vector(result.vector)} at distance {format_rational(witness_dist)}"
    else:
        headline = f"EMPTY: no lattice vector within {format_rational(inst.dist / alpha)}"
    calls = f"base-oracle calls {base.calls}" + (f" of at most {budget}" if budget is not None else "")
    emit(answer, args, [headline, calls])
    return 0


def register(subparsers, parents) -> None:
    gap = subparsers.add_parser("gap", help="Gap closest vector problem")
    actions = gap.add_subparsers(dest="action", required=True)

    p = actions.add_parser("solve", parents=parents, help="Answer an alpha-gap query, or a (1+eps)-gap query with --eps")
    p.add_argument("--in", dest="input", required=True, help="Instance JSON {basis, target, dist}")
    p.add_argument("--dist", type=rational_arg, default=None, help="Distance D (overrides the file)")
    p.add_argument("--alpha", type=rational_arg, default=None,
                   help="Gap of the base oracle as p/q (default from SCALE_FACTOR, 2)")
    p.add_argument("--eps", type=rational_arg, default=None,
                   help="Boost the base oracle to a (1+eps)-gap oracle, eps in (0, 1] as p/q")
    p.add_argument("--oracle", choices=[k.value for k in OracleKind], default=OracleKind.EXACT.value)
    p.set_defaults(handler=solve)
