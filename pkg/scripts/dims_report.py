"""Tabulate the admissible dimensions for a grid of parameters, in both lattices when n = 2 and s is even.

    python3 scripts/dims_report.py --n 10 --k 6 --s 2
    python3 scripts/dims_report.py --grid
"""

import argparse

from oadim.arrays import OAParams
from oadim.dims import GENERAL, N2_EVEN_S, candidate_dims


def show(p: OAParams):
    modes = [GENERAL, N2_EVEN_S] if p.n == 2 and p.s % 2 == 0 else [GENERAL]
    for mode in modes:
        rep = candidate_dims(p, mode)
        print(f"n={p.n:<3} k={p.k:<2} s={p.s:<2} lam={p.lam:<2} {mode:<10} base={rep.base_dim:<9} "
              f"omega={list(rep.omega.members)!s:<12} dims={rep.dimensions}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--lambda", dest="lam", type=int, default=1)
    ap.add_argument("--grid", action="store_true", help="n <= 6, k <= 7, s < k")
    a = ap.parse_args()
    if not a.grid:
        show(OAParams(a.n, a.k, a.s, a.lam))
        return
    for n in range(2, 7):
        for k in range(2, 8):
            for s in range(1, k):
                show(OAParams(n, k, s, a.lam))


if __name__ == "__main__":
    main()
