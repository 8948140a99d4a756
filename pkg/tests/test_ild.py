import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from oadim.arrays import FrequencyVector, OAParams, ParameterError, check_strength_direct
from oadim.dims import base_dimension, block_rows, constraint_family
from oadim.ild import (build_ild_J, build_ild_marginal, check_equivalence, emit, from_json_text, to_json_text,
                       to_lp_text)
from oadim.linalg import Echelon

from conftest import DESK_CASES, solutions

SMALL = [(n, k, s) for n in (2, 3) for k in range(1, 6) for s in range(k + 1)]


def test_marginal_examples():
    sys = build_ild_marginal(OAParams(2, 2, 1))
    assert len(sys.rows) == 4
    assert all(len(r) == 2 for r in sys.rows) and set(sys.rhs) == {1}
    assert sys.upper == [1] * 4 and all(sys.integer)
    sys = build_ild_marginal(OAParams(2, 3, 2))
    assert len(sys.rows) == 12 and all(len(r) == 2 for r in sys.rows)
    sys = build_ild_marginal(OAParams(2, 3, 0, 3))
    assert len(sys.rows) == 1 and sys.rhs == [3] and len(sys.rows[0]) == 8


def test_J_form_examples():
    sys = build_ild_J(OAParams(2, 2, 1))
    A = sys.matrix()
    assert list(A[0]) == [1, 1, 1, 1] and sys.rhs[0] == 2
    assert sys.rhs[1:] == [0] * 4
    for row in A[1:]:
        assert set(np.abs(row)) == {1}
    assert sys.labels[0] == "J_empty"


@pytest.mark.parametrize("n,k,s", SMALL)
def test_marginal_rank_and_equivalence(n, k, s):
    p = OAParams(n, k, s)
    a, b = build_ild_marginal(p), build_ild_J(p)
    expected = sum(math.comb(k, j) * (n - 1) ** j for j in range(s + 1))
    assert a.rank() == b.rank() == expected
    assert check_equivalence(a, b)
    assert p.size - expected == base_dimension(p)


def test_equivalence_examples():
    a = build_ild_marginal(OAParams(2, 3, 2))
    assert check_equivalence(a, build_ild_J(OAParams(2, 3, 2)))
    assert check_equivalence(a, a)
    assert not check_equivalence(a, build_ild_marginal(OAParams(2, 3, 1)))
    assert build_ild_marginal(OAParams(3, 2, 1)).rank() == build_ild_J(OAParams(3, 2, 1)).rank() == 5
    with pytest.raises(ParameterError):
        check_equivalence(a, build_ild_marginal(OAParams(2, 2, 1)))


def test_same_rows_different_rhs_not_equivalent():
    a = build_ild_marginal(OAParams(2, 2, 1))
    b = build_ild_marginal(OAParams(2, 2, 1))
    b.rhs[0] = Fraction(2)
    assert not check_equivalence(a, b)


@pytest.mark.parametrize("case", DESK_CASES)
def test_solutions_satisfy_both_systems(case):
    p = OAParams(*case)
    a, b = build_ild_marginal(p), build_ild_J(p)
    for fv in solutions(*case):
        assert a.satisfied_by(fv.counts) and b.satisfied_by(fv.counts)


def test_non_solutions_violate_some_row():
    p = OAParams(2, 3, 2)
    a, b = build_ild_marginal(p), build_ild_J(p)
    for counts in itertools.product(range(2), repeat=8):
        if sum(counts) != p.N:
            continue
        ok = check_strength_direct(FrequencyVector(p, counts), 2)
        assert a.satisfied_by(counts) == ok == b.satisfied_by(counts)


def test_emit_lp_text_layout():
    sys = build_ild_marginal(OAParams(2, 2, 1))
    text = emit(sys)
    lines = text.splitlines()
    assert lines[1] == "subject to"
    assert lines[2] == " c0: +1 x_0 +1 x_1 = 1  \\ M_0@0"
    assert sum(1 for ln in lines if ln.startswith(" c")) == len(sys.rows)
    assert lines[-1] == "end" and "bounds" in lines and "general" in lines
    assert text == to_lp_text(sys)


def test_emit_with_family_and_determinism():
    p = OAParams(3, 4, 2)
    sys = build_ild_marginal(p)
    fam = constraint_family(p, (2,))
    text = emit(sys, fam)
    assert sum(1 for ln in text.splitlines() if ln.startswith(" c")) == len(sys.rows) + len(fam)
    assert emit(build_ild_marginal(p), constraint_family(p, (2,))) == text
    assert len(sys.rows) == 54


def test_emit_json_round_trip():
    p = OAParams(2, 4, 3)
    sys = build_ild_J(p)
    extra = block_rows(2, 4, [4])
    text = emit(sys, extra, "json")
    back = from_json_text(text)
    assert back.rows == sys.extended(extra).rows and back.rhs == sys.extended(extra).rhs
    assert to_json_text(back) == text
    assert '"upper": [\n  "1"' in text


def test_emit_rejects_unknown_format():
    with pytest.raises(ParameterError):
        emit(build_ild_marginal(OAParams(2, 2, 1)), fmt="mps")


def test_augmented_rows_scale_rationals():
    sys = build_ild_marginal(OAParams(2, 2, 1))
    sys.rhs[0] = Fraction(1, 2)
    row = next(iter(sys.augmented_rows()))
    assert row[-1] == 1 and row[0] == 2
    ech = Echelon(5)
    assert ech.add(row)
