"""Why OA(9,4,3,2) sits one lattice step below the base dimension.

Counts the solutions, checks the Latin-square product structure, and shows that
the full four-column J-block vanishes on every one of them.
"""

from oadim.anova import anova_transform
from oadim.arrays import OAParams
from oadim.dims import candidate_dims
from oadim.oracle import affine_dimension, enumerate_all, vanishing_blocks


def main():
    p = OAParams(3, 4, 2)
    sols = enumerate_all(p).solutions
    rep = candidate_dims(p)
    print(f"solutions: {len(sols)} (12 Latin squares of order 3 x 6 orthogonal mates)")
    print(f"candidates: {rep.dimensions}  omega={list(rep.omega.members)}")
    print(f"measured dim: {affine_dimension(sols).dimension}")
    print(f"vanishing sizes: {sorted(vanishing_blocks(sols).vanishing_sizes)}")
    top = {tuple(anova_transform(fv).values_on_u(0b1111)) for fv in sols}
    print(f"distinct J_1234 tables: {len(top)}, all zero: {top == {(0,) * 81}}")


if __name__ == "__main__":
    main()
