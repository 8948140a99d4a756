import numpy as np
from hypothesis import given, settings, strategies as st

from oadim.linalg import Echelon, exact_matmul, rank, row_space_equal
from oadim.oracle import affine_dimension

from conftest import solutions


@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_rank_matches_floating_point_on_small_integers(seed, m, n):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(m, n)) * (rng.random((m, n)) < 0.6)
    assert rank(A.tolist(), n) == np.linalg.matrix_rank(A)


def test_affine_dimension_matches_floating_point():
    for case in [(3, 4, 2), (3, 3, 1), (4, 3, 2)]:
        X = np.array([fv.counts for fv in solutions(*case)], dtype=float)
        assert affine_dimension(list(solutions(*case))).dimension == np.linalg.matrix_rank(X[1:] - X[0])


def test_echelon_membership_and_row_spaces():
    ech = Echelon(3)
    assert ech.add([1, 2, 3]) and ech.add([0, 1, 1])
    assert not ech.add([2, 5, 7])
    assert ech.contains([1, 3, 4]) and not ech.contains([0, 0, 1])
    assert row_space_equal([[1, 0], [0, 1]], [[1, 1], [1, -1]], 2)
    assert not row_space_equal([[1, 0]], [[0, 1]], 2)


def test_exact_matmul_switches_to_objects():
    big = np.full((2, 2), 2**40, dtype=np.int64)
    out = exact_matmul(big, big)
    assert out.dtype == object and out[0, 0] == 2 * 2**80
    assert exact_matmul(np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64)).dtype == np.int64
