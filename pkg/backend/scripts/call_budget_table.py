#!/usr/bin/env python3
"""
Oracle-call table: boosting and binary search against their bounds.

For every (n, eps) prints
- bodies: base-oracle calls of one boosted_gap (exactly 2^n (A+1)^n)
- bound: 2^n (2 + log2(1/eps))^n
- search calls: worst binary-search gap calls over seeded instances
- search budget: ceil(log2 M0) + 2 for that instance

Run:
  cd backend
  python scripts/call_budget_table.py --dims 1,2,3 --eps 1/2,1/10 --instances 5 --out budget.json
"""

import os
import sys
import json
import argparse
from typing import Any, Dict, List

script_dir = os.path.dirname(os.path.abspath(__file__))
backend_dir = os.path.dirname(script_dir)
sys.path.insert(0, backend_dir)

from app.commands.common import int_list_arg, rational_list_arg, summary_table
from app.models.campaign import InstanceGen
from app.models.rational import format_rational
from app.services.boost import (
    approx_cvp,
    boost_call_budget,
    make_search_oracle,
    search_call_budget,
    within_boost_bound,
)
from app.services.campaign import derive_seed, make_base_oracle
from app.services.covering import log2_bound_value
from app.services.instances import gen_instances


def budget_rows(dims: List[int], eps_list, instances: int, seed: int, oracle: str) -> List[Dict[str, Any]]:
    rows = []
    for group, (n, eps) in enumerate((n, e) for n in dims for e in eps_list):
        worst_calls, worst_budget, over_budget = 0, 0, 0
        stream = gen_instances(InstanceGen(derive_seed(seed, group), n, 5, instances))
        for i, inst in enumerate(stream):
            base = make_base_oracle(oracle, derive_seed(seed, 1000 + i))
            result = approx_cvp(inst.basis, inst.target, eps, make_search_oracle(eps, base))
            budget = search_call_budget(result.initial_gap)
            if result.search_calls > worst_calls:
                worst_calls, worst_budget = result.search_calls, budget
            over_budget += result.search_calls > budget
        rows.append({
            "dim": n,
            "eps": format_rational(eps),
            "bodies": boost_call_budget(n, eps),
            "bound": round(log2_bound_value(n, eps, offset=2), 3),
            "within_bound": within_boost_bound(n, eps),
            "search_calls": worst_calls,
            "search_budget": worst_budget,
            "over_budget": over_budget,
        })
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument('--dims', type=int_list_arg, default=[1, 2, 3])
    parser.add_argument('--eps', type=rational_list_arg, default=rational_list_arg("1/2,1/10"))
    parser.add_argument('--instances', type=int, default=5, help='Seeded instances per (n, eps) for the search columns')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--oracle', choices=['exact', 'adversarial'], default='exact')
    parser.add_argument('--out', type=str, default='', help='Write the table to JSON file')
    args = parser.parse_args()

    rows = budget_rows(args.dims, args.eps, args.instances, args.seed, args.oracle)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            json.dump({"rows": rows}, f, indent=2)
        print(f"Wrote table to {args.out}")

    headers = list(rows[0].keys()) if rows else []
    for line in summary_table([[str(row[h]) for h in headers] for row in rows], headers):
        print(line)
    if any(not row["within_bound"] or row["over_budget"] for row in rows):
        sys.exit(1)


if __name__ == '__main__':
    main()
