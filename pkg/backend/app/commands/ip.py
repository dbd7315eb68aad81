"""
IP command: reduce a box integer program to a CVP instance, optionally solving it.
"""

import argparse
import logging

from ..models.rational import format_rational
from ..schemas.lattice import InstanceFile, IpAnswer, SlabFile
from ..services.oracles import box_ip_to_cvp, exact_cvp
from .common import emit, load_schema

logger = logging.getLogger(__name__)


def reduce_slab(args: argparse.Namespace) -> int:
    slab = load_schema(args.input, SlabFile)
    a = tuple(tuple(row) for row in slab.a)
    inst = box_ip_to_cvp(a, slab.lower, slab.upper)
    answer = IpAnswer(instance=InstanceFile.from_model(inst))
    summary = [f"CVP instance with D = {format_rational(inst.dist)}"]
    if args.solve:
        solution = exact_cvp(inst.basis, inst.target)
        answer.feasible = solution.dist <= inst.dist
        answer.cvp_dist = solution.dist
        if answer.feasible:
            answer.point = list(solution.coeffs)
            summary.append(f"FEASIBLE: x = {answer.point}")
        else:
            summary.append(f"INFEASIBLE: closest distance {format_rational(solution.dist)} > 1/2")
    emit(answer, args, summary)
    return 0


def register(subparsers, parents) -> None:
    ip = subparsers.add_parser("ip", help="Box-constrained integer programs")
    actions = ip.add_subparsers(dest="action", required=True)

    p = actions.add_parser("reduce", parents=parents, help="Reduce l <= Ax <= u to CVP-inf with D = 1/2")
    p.add_argument("--in", dest="input", required=True, help="Slab JSON {A, lower, upper}")
    p.add_argument("--solve", action="store_true", help="Decide feasibility with the exact solver")
    p.set_defaults(handler=reduce_slab)
