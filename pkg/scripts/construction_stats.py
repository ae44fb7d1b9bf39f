#!/usr/bin/env python3
"""Planner statistics over a profile grid.

For every profile whose weight sum p^l m_l exceeds the closed-form
worst-case defect c(p, k), plan the sphere map S(n_0 L) -> S(V) and
summarize how the achieved defect compares with the worst case and how
close n_0 comes to the necessary ceiling delta(V).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bucalc import delta, make_group, rep_from_profile, validate_certificate, worst_case_defect
from bucalc.constructions import plan_sphere_map


def grid_profiles(p, k, cap):
    weights = [p**l for l in range(k + 1)]
    out = []

    def rec(level, remaining, acc):
        if level == k:
            for m_k in range(1, remaining // weights[k] + 1):
                out.append(tuple(acc + [m_k]))
            return
        for m in range(remaining // weights[level] + 1):
            rec(level + 1, remaining - m * weights[level], acc + [m])

    rec(0, cap, [])
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--groups", default="2:0,2:1,3:0,3:1,5:0,5:1",
                        help="comma-separated p:k pairs")
    parser.add_argument("--cap", type=int, default=30, help="profile weight cap")
    args = parser.parse_args()

    print(f"{'group':>8} {'plans':>6} {'c_worst':>8} {'max c_achieved':>15} "
          f"{'max nodes':>10} {'min slack to delta':>19}")
    for part in args.groups.split(","):
        p, k = (int(v) for v in part.split(":"))
        group = make_group(p, k)
        c = worst_case_defect(p, k)
        plans = 0
        max_c = 0
        max_nodes = 0
        min_slack = None
        for profile in grid_profiles(p, k, args.cap):
            weight = sum(p**l * m for l, m in enumerate(profile))
            if weight <= c:
                continue
            plan = plan_sphere_map(rep_from_profile(group, profile))
            validate_certificate(plan.certificate)
            plans += 1
            max_c = max(max_c, plan.c_achieved)
            slack = delta(plan.rep) - plan.source_dim
            min_slack = slack if min_slack is None else min(min_slack, slack)

            def count(node):
                return 1 + sum(count(child) for child in node.children)

            max_nodes = max(max_nodes, count(plan.certificate))
        print(f"Z/{p}^{k + 1:<4} {plans:>6} {c:>8} {max_c:>15} {max_nodes:>10} "
              f"{min_slack if min_slack is not None else '-':>19}")


if __name__ == "__main__":
    main()
