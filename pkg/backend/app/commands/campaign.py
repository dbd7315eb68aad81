"""
Campaign commands: run a verification campaign and replay one of its cases.
"""

import argparse
import logging
from typing import Dict, List

from ..config import get_settings
from ..exceptions import ConfigError
from ..models.campaign import CampaignKind, OracleKind
from ..models.covering import CoverKind
from ..schemas.campaign import CaseResult, Report
from ..services.campaign import campaign_from_params, replay_case, run_campaign
from .common import emit, int_list_arg, load_schema, rational_list_arg, summary_table

logger = logging.getLogger(__name__)

# Metrics shown in the human summary, per campaign kind
SUMMARY_METRICS: Dict[CampaignKind, List[str]] = {
    CampaignKind.COVER_VERIFY: ["bodies", "points_checked", "unsafe", "uncovered"],
    CampaignKind.COUNT_AUDIT: ["emitted", "log2_bound", "grid_size", "grid_max_per_body", "ellipsoid_grid_max"],
    CampaignKind.APPROX_AUDIT: ["achieved_dist", "exact_dist", "search_calls", "search_budget"],
    CampaignKind.GAP_BUDGET: ["answer", "exact_dist", "base_calls", "call_budget"],
    CampaignKind.CVP_AUDIT: ["exact_dist", "brute_force_dist"],
    CampaignKind.IP_AUDIT: ["reduction_feasible", "brute_force_feasible"],
}


def _parse_options(pairs: List[str]) -> Dict[str, str]:
    options = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"option '{pair}' is not key=value", field="option")
        options[key.strip()] = value.strip()
    return options


def _case_rows(cases: List[CaseResult], kind: CampaignKind) -> List[List[str]]:
    keys = SUMMARY_METRICS[kind]
    rows = []
    for case in cases:
        params = case.params
        label = " ".join(f"{k}={params[k]}" for k in ("dim", "eps") if k in params)
        status = "pass" if case.passed else ("ERROR " + case.error["type"] if case.error else "FAIL")
        rows.append([str(case.index), label, status] + [str(case.metrics.get(k, "")) for k in keys])
    return rows


def run(args: argparse.Namespace) -> int:
    campaign = campaign_from_params(
        kind=args.kind,
        dims=args.dims,
        eps_list=args.eps,
        samples=args.samples,
        seed=args.seed,
        oracle=args.oracle,
        cover_kind=args.cover_kind,
        entry_bound=args.entry_bound,
        extended=args.extended,
        workers=args.workers,
        options=_parse_options(args.option),
    )
    report = run_campaign(campaign)
    kind = campaign.kind
    shown = report.cases if args.all_cases else report.failures()
    summary = [f"{kind.value}: {report.total - report.failed}/{report.total} cases passed"]
    if shown:
        summary += summary_table(_case_rows(shown, kind), ["case", "params", "status"] + SUMMARY_METRICS[kind])
    emit(report, args, summary)
    return 0 if report.passed else 1


def replay(args: argparse.Namespace) -> int:
    report = load_schema(args.input, Report)
    case = replay_case(report, args.case)
    original = next(c for c in report.cases if c.index == args.case)
    summary = [
        f"case {case.index} ({case.kind.value}): {'pass' if case.passed else 'FAIL'}"
        f" (recorded: {'pass' if original.passed else 'FAIL'})",
    ]
    summary += [f"  {key}: {value}" for key, value in case.metrics.items()]
    if case.error:
        summary.append(f"  error: {case.error['type']}: {case.error['message']}")
    emit(case, args, summary)
    return 0 if case.passed else 1


def register(subparsers, parents) -> None:
    settings = get_settings()
    campaign = subparsers.add_parser("campaign", help="Reproducible verification campaigns")
    actions = campaign.add_subparsers(dest="action", required=True)

    p = actions.add_parser("run", parents=parents, help="Run a campaign and report every case")
    p.add_argument("--kind", choices=[k.value for k in CampaignKind], required=True)
    p.add_argument("--dims", type=int_list_arg, default=[1, 2, 3], help="Comma-separated dimensions")
    p.add_argument("--eps", type=rational_list_arg, default=["1/2", "1/10"], help="Comma-separated p/q values")
    p.add_argument("--samples", type=int, default=None,
                   help="Points per cover (cover-verify) or instances per (n, eps) group (default from settings)")
    p.add_argument("--oracle", choices=[k.value for k in OracleKind], default=OracleKind.EXACT.value)
    p.add_argument("--cover-kind", choices=[k.value for k in CoverKind], default=CoverKind.BOX.value)
    p.add_argument("--entry-bound", type=int, default=5, help="Basis entries drawn from [-B, B]")
    p.add_argument("--extended", action="store_true",
                   help=f"Allow dimensions up to {settings.extended_max_dim}")
    p.add_argument("--workers", type=int, default=None, help="Worker processes (default from settings)")
    p.add_argument("--option", action="append", default=[], help="Extra key=value (factor, ellipsoids)")
    p.add_argument("--all-cases", action="store_true", help="List every case in the summary, not only failures")
    p.set_defaults(handler=run)

    p = actions.add_parser("replay", parents=parents, help="Re-run one case of a saved report")
    p.add_argument("--in", dest="input", required=True, help="Report JSON from 'campaign run'")
    p.add_argument("--case", type=int, required=True, help="Case index")
    p.set_defaults(handler=replay)
