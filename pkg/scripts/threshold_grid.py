#!/usr/bin/env python3
"""Sweep nonvanishing thresholds over a profile grid.

For every profile (m_0, ..., m_k) with m_k >= 1 and weight
sum p^l m_l <= --cap, and every j <= --j-cap, this confirms the p-local
threshold n = j + 1 + delta and reports every point at the p-local
vanishing edge n = j + delta where the integral verdict disagrees
(i.e. the class survives integrally through torsion prime to p).
Whether that ever happens is an open question; this script collects the
empirical evidence without asserting either way.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bucalc import EulerQuery, delta, is_nonvanishing, make_group, rep_from_profile
from bucalc.cyclic_ring import INTEGRAL, P_LOCAL


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


def parse_groups(text):
    groups = []
    for part in text.split(","):
        p, k = part.split(":")
        groups.append((int(p), int(k)))
    return groups


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--groups", default="2:0,2:1,2:2,3:0,3:1,3:2,5:0,5:1",
                        help="comma-separated p:k pairs")
    parser.add_argument("--cap", type=int, default=20, help="profile weight cap")
    parser.add_argument("--j-cap", type=int, default=4)
    args = parser.parse_args()

    grand_points = grand_edge = grand_diff = 0
    print(f"{'group':>8} {'profiles':>9} {'thresholds':>11} {'edge pts':>9} "
          f"{'integral!=p_local at edge':>26}")
    for p, k in parse_groups(args.groups):
        group = make_group(p, k)
        points = edges = diffs = 0
        disagreements = []
        profiles = grid_profiles(p, k, args.cap)
        for profile in profiles:
            rep = rep_from_profile(group, profile)
            d = delta(rep)
            for j in range(args.j_cap + 1):
                # confirm the p-local threshold from both sides
                assert is_nonvanishing(EulerQuery(rep, j + 1 + d, j, P_LOCAL))
                assert not is_nonvanishing(EulerQuery(rep, j + d, j, P_LOCAL))
                points += 1
                edges += 1
                if is_nonvanishing(EulerQuery(rep, j + d, j, INTEGRAL)):
                    diffs += 1
                    disagreements.append((profile, j))
        print(f"Z/{p}^{k + 1:<4} {len(profiles):>9} {points:>11} {edges:>9} {diffs:>26}")
        for profile, j in disagreements[:10]:
            print(f"    integral survivor at edge: profile={profile} j={j}")
        grand_points += points
        grand_edge += edges
        grand_diff += diffs
    print(f"\nthresholds confirmed: {grand_points}; "
          f"edge points with integral survivor: {grand_diff}/{grand_edge}")


if __name__ == "__main__":
    main()
