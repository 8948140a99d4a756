"""Enumerate every desk-scale parameter set, measure dim(P_I) and compare with the candidate lattice.

    python3 scripts/certify_table.py [--json out.json]
"""

import argparse
import json
import time

from oadim.arrays import OAParams
from oadim.oracle import certify

CASES = [
    (3, 2, 1, 1), (2, 3, 2, 1), (3, 3, 1, 1), (3, 4, 2, 1), (4, 3, 2, 1),
    (2, 4, 3, 1), (2, 5, 4, 1), (2, 4, 2, 2), (2, 5, 3, 2), (2, 4, 1, 2),
    (2, 2, 2, 1), (3, 3, 3, 1), (3, 3, 2, 3),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--json")
    ap.add_argument("--budget-seconds", type=float, default=600)
    a = ap.parse_args()
    rows = []
    print(f"{'n':>2} {'k':>2} {'s':>2} {'lam':>3} {'sols':>5} {'dim':>4}  candidates        T     ok   sec")
    for case in CASES:
        t0 = time.monotonic()
        rep = certify(OAParams(*case), budget_seconds=a.budget_seconds)
        sec = time.monotonic() - t0
        T = list(rep.realized.T) if rep.realized else None
        print(f"{case[0]:>2} {case[1]:>2} {case[2]:>2} {case[3]:>3} {len(rep.enumeration.solutions):>5} "
              f"{str(rep.dimension):>4}  {str(rep.dim_report.dimensions):<17} {str(T):<5} {str(rep.ok):<5} {sec:.2f}")
        rows.append(rep.to_json())
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
