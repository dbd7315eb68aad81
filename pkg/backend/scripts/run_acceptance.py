#!/usr/bin/env python3
"""
Run the full acceptance grid and write one JSON report.

Each criterion is one or more campaigns; the report lists, per criterion,
every campaign's totals and the indices of failing cases. Full campaign
reports (with replayable payloads) are written next to it with --keep-reports.

Run:
  cd backend
  python scripts/run_acceptance.py --out acceptance.json --workers 4
  python scripts/run_acceptance.py --quick
"""

import os
import sys
import json
import time
import argparse
import logging
from typing import Any, Dict, List, Tuple

script_dir = os.path.dirname(os.path.abspath(__file__))
backend_dir = os.path.dirname(script_dir)
sys.path.insert(0, backend_dir)

from app.services.campaign import campaign_from_params, run_campaign

logger = logging.getLogger("acceptance")

SMALL_EPS = ["1/2", "1/10", "1/100"]
SEARCH_EPS = ["1/2", "1/10"]


def criteria(quick: bool) -> List[Tuple[str, List[Dict[str, Any]]]]:
    """(criterion, [campaign params]) for the whole grid; --quick shrinks sample counts."""
    points = 500 if quick else 10_000
    per_group = 3 if quick else 17
    per_dim = 10 if quick else 67
    return [
        ("covering safety, completeness and count", [
            dict(kind="cover-verify", dims=[1, 2, 3], eps_list=SMALL_EPS, samples=points),
        ]),
        ("count bound, grid cardinality and counting bounds", [
            dict(kind="count-audit", dims=[1, 2, 3], eps_list=SMALL_EPS, samples=0),
        ]),
        ("ellipsoid covering", [
            dict(kind="cover-verify", dims=[2, 3, 4], eps_list=SEARCH_EPS, samples=points,
                 cover_kind="ellipsoid", extended=True),
        ]),
        ("exact solver against brute force", [
            dict(kind="cvp-audit", dims=[1, 2, 3], eps_list=[], samples=per_dim),
        ]),
        ("boosted gap soundness and budget", [
            dict(kind="gap-budget", dims=[1, 2, 3], eps_list=SEARCH_EPS, samples=per_group, oracle="exact"),
            dict(kind="gap-budget", dims=[1, 2, 3], eps_list=SEARCH_EPS, samples=per_group, oracle="adversarial"),
        ]),
        ("end-to-end approximation", [
            dict(kind="approx-audit", dims=[1, 2, 3], eps_list=SEARCH_EPS, samples=per_group, oracle="exact"),
            dict(kind="approx-audit", dims=[1, 2, 3], eps_list=SEARCH_EPS, samples=per_group, oracle="adversarial"),
        ]),
        ("box integer programs through CVP", [
            dict(kind="ip-audit", dims=[1, 2, 3], eps_list=[], samples=per_dim // 4 + 1),
        ]),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description="Run the CubeLab acceptance grid")
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--workers', type=int, default=1)
    parser.add_argument('--quick', action='store_true', help='Small sample counts for a fast smoke run')
    parser.add_argument('--out', type=str, default='', help='Write the summary report to JSON file')
    parser.add_argument('--keep-reports', type=str, default='', help='Directory for full campaign reports')
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    if args.keep_reports:
        os.makedirs(args.keep_reports, exist_ok=True)

    summary: Dict[str, Any] = {"seed": args.seed, "quick": args.quick, "criteria": []}
    all_passed = True
    for number, (name, campaigns) in enumerate(criteria(args.quick), start=1):
        entries = []
        for params in campaigns:
            campaign = campaign_from_params(seed=args.seed, workers=args.workers, **params)
            started = time.perf_counter()
            report = run_campaign(campaign)
            elapsed = time.perf_counter() - started
            label = f"{params['kind']}-{params.get('oracle', params.get('cover_kind', 'box'))}"
            if args.keep_reports:
                path = os.path.join(args.keep_reports, f"{number:02d}-{label}.json")
                with open(path, 'w', encoding='utf-8') as f:
                    f.write(report.to_json() + "\n")
            entries.append({
                "campaign": label,
                "passed": report.passed,
                "total": report.total,
                "failed": report.failed,
                "failing_cases": [case.index for case in report.failures()],
            })
            logger.info(f"{name}: {label} {report.total - report.failed}/{report.total} in {elapsed:.1f}s")
        passed = all(entry["passed"] for entry in entries)
        all_passed = all_passed and passed
        summary["criteria"].append({"criterion": name, "passed": passed, "campaigns": entries})
    summary["passed"] = all_passed

    text = json.dumps(summary, indent=2)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text + "\n")
        print(f"Wrote report to {args.out}")
    else:
        print(text)
    sys.exit(0 if all_passed else 1)


if __name__ == '__main__':
    main()
