import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oadim.anova import anova_transform, check_strength_J
from oadim.arrays import (FrequencyVector, OAParams, ParameterError, SymbolArray, array_to_frequency,
                          check_strength_direct, counts_vector, first_strength_violation, frequency_to_array,
                          read_array, read_frequency, tuple_rank, tuple_unrank, write_array)

from conftest import DESK_CASES, LATIN2, solutions


@pytest.mark.parametrize("digits,n,rank", [((0, 0, 0), 2, 0), ((1, 0, 1), 2, 5), ((2, 1), 3, 7)])
def test_tuple_rank_examples(digits, n, rank):
    assert tuple_rank(digits, n) == rank
    assert tuple_unrank(rank, n, len(digits)) == digits


def test_tuple_rank_rejects_bad_digit():
    with pytest.raises(ParameterError):
        tuple_rank((0, 2), 2)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(1, 9) if n**k <= 5**5])
def test_rank_unrank_bijection(n, k):
    for r, word in enumerate(itertools.product(range(n), repeat=k)):
        assert tuple_rank(word, n) == r
        assert tuple_unrank(r, n, k) == word


def test_params_defaults_and_validation():
    p = OAParams(3, 4, 2)
    assert p.N == 9 and p.p_max == 1 and p.size == 81
    with pytest.raises(ParameterError):
        OAParams(2, 2, 3)
    with pytest.raises(ParameterError):
        OAParams(2, 3, 1, lam=2, p_max=3)
    with pytest.raises(ParameterError):
        OAParams(1, 3, 1)


def test_array_to_frequency_examples():
    full = SymbolArray(((0, 0), (0, 1), (1, 0), (1, 1)), 2)
    assert array_to_frequency(full, OAParams(2, 2, 2)).counts == (1, 1, 1, 1)
    rep = SymbolArray(((0, 0), (0, 0)), 2)
    assert array_to_frequency(rep, OAParams(2, 2, 1)).counts == (2, 0, 0, 0)
    ls = SymbolArray(((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)), 2)
    assert array_to_frequency(ls, OAParams(2, 3, 2)).counts == LATIN2


def test_array_to_frequency_row_count_mismatch():
    with pytest.raises(ParameterError):
        array_to_frequency(SymbolArray(((0, 0),), 2), OAParams(2, 2, 1))


def test_symbol_array_validation():
    with pytest.raises(ParameterError):
        SymbolArray(((0, 2),), 2)
    with pytest.raises(ParameterError):
        SymbolArray((), 2)
    assert SymbolArray.from_pm1([(-1, 1)]).rows == ((0, 1),)


def test_check_strength_direct_examples():
    assert check_strength_direct(FrequencyVector(OAParams(2, 3, 3), (1,) * 8), 3)
    assert check_strength_direct(FrequencyVector(OAParams(2, 3, 2), LATIN2), 2)
    fv = FrequencyVector(OAParams(2, 2, 0, 2), (2, 0, 0, 0))
    assert not check_strength_direct(fv, 1)
    assert first_strength_violation(fv, 1) == ((0,), (0,), 2, 1)
    with pytest.raises(ParameterError):
        check_strength_direct(fv, 3)


def test_non_divisible_total_is_not_strength():
    fv = FrequencyVector(OAParams(2, 2, 0, 3), (1, 1, 1, 0))
    assert first_strength_violation(fv, 1) == ((), (), 3, None)


def _random_array(rng, n, k, N):
    return SymbolArray(tuple(tuple(int(v) for v in row) for row in rng.integers(0, n, size=(N, k))), n)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_row_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    arr = _random_array(rng, 3, 3, 7)
    perm = rng.permutation(arr.N)
    shuffled = SymbolArray(tuple(arr.rows[i] for i in perm), 3)
    assert counts_vector(arr) == counts_vector(shuffled)


@pytest.mark.parametrize("case", DESK_CASES)
def test_strength_downward_closed_and_J_agreement(case):
    for fv in solutions(*case):
        jv = anova_transform(fv)
        for s2 in range(case[2] + 1):
            assert check_strength_direct(fv, s2)
            assert check_strength_J(jv, s2)


def test_direct_and_J_criteria_agree_on_random_arrays():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = int(rng.integers(2, 4))
        k = int(rng.integers(1, 5))
        fv = counts_vector(_random_array(rng, n, k, int(rng.integers(1, 19))))
        jv = anova_transform(fv)
        for s in range(k + 1):
            assert check_strength_direct(fv, s) == check_strength_J(jv, s)


def test_file_round_trips(tmp_path):
    ls = SymbolArray(((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)), 2)
    write_array(ls, tmp_path / "a.txt")
    assert (tmp_path / "a.txt").read_text().splitlines()[0] == "2 3 4"
    assert read_array(tmp_path / "a.txt") == ls
    fv = FrequencyVector(OAParams(2, 3, 2), LATIN2)
    (tmp_path / "f.json").write_text(json.dumps(fv.to_json()))
    assert read_frequency(tmp_path / "f.json") == fv
    assert set(json.loads((tmp_path / "f.json").read_text())) >= {"n", "k", "lambda", "s", "counts"}
    assert counts_vector(frequency_to_array(fv)).counts == fv.counts
