"""ANOVA coordinates (J-characteristics) of frequency vectors.

Column subsets u are bitmasks, bit j standing for column j. A J-block is
stored at full length n^k even though it only depends on the digits in u.
Everything is integer arithmetic: J_u = n^k x_u is always an integer for an
integer count vector, so no fractions are needed until mu = J_u / n^s.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arrays import FrequencyVector, OAParams, all_tuples, tuple_rank


class UnsupportedAlphabet(ValueError):
    """Operation only defined for two-symbol arrays."""


class PreconditionError(ValueError):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_columns(mask: int) -> tuple[int, ...]:
    return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def columns_mask(cols) -> int:
    m = 0
    for j in cols:
        m |= 1 << j
    return m


def masks_of_size(k: int, r: int) -> list[int]:
    return [columns_mask(c) for c in itertools.combinations(range(k), r)]


def h_order(k: int) -> list[int]:
    """Subset order of the rows of H: empty set, singletons, pairs, ..."""
    return [m for r in range(k + 1) for m in masks_of_size(k, r)]


def proper_subsets(mask: int):
    v = (mask - 1) & mask
    while True:
        yield v
        if v == 0:
            return
        v = (v - 1) & mask


@dataclass
class JVector:
    params: OAParams
    blocks: dict[int, np.ndarray] = field(repr=False)

    def block(self, cols) -> np.ndarray:
        return self.blocks[columns_mask(cols)]

    def value(self, mask: int, digits) -> int:
        return int(self.blocks[mask][tuple_rank(digits, self.params.n)])

    def interaction(self, mask: int) -> list[Fraction]:
        """x_u = J_u / n^k as exact fractions."""
        d = self.params.size
        return [Fraction(int(v), d) for v in self.blocks[mask]]

    def values_on_u(self, mask: int) -> list[int]:
        """Block restricted to digits in u, lexicographic over those digits."""
        p = self.params
        t = self.blocks[mask].reshape((p.n,) * p.k)
        idx = tuple(slice(None) if mask >> j & 1 else 0 for j in range(p.k))
        return [int(v) for v in t[idx].ravel()]

    def is_zero(self, mask: int) -> bool:
        return not self.blocks[mask].any()

    def to_json(self) -> list[dict]:
        return [{"u": list(mask_columns(m)), "values_on_u": self.values_on_u(m)}
                for m in h_order(self.params.k)]


@dataclass
class SignedJVector:
    k: int
    entries: tuple[int, ...]

    def by_mask(self) -> dict[int, int]:
        return dict(zip(h_order(self.k), self.entries))

    def to_json(self) -> list[int]:
        return list(self.entries)


def anova_transform(fv: FrequencyVector) -> JVector:
    """J-blocks by the interaction recursion.

    J_u(i) = n^{|u|} * (sum of x over digits outside u) - sum_{v < u} J_v(i).
    """
    p = fv.params
    n, k = p.n, p.k
    if p.size * max(fv.total, 1) * 2**k >= 2**62:
        raise OverflowError("frequency vector too large for int64 J-blocks")
    x = fv.tensor()
    blocks: dict[int, np.ndarray] = {}
    for mask in h_order(k):
        drop = tuple(j for j in range(k) if not mask >> j & 1)
        marg = x.sum(axis=drop, keepdims=True) if drop else x
        block = n ** popcount(mask) * np.broadcast_to(marg, x.shape).ravel()
        if mask:
            for v in proper_subsets(mask):
                block = block - blocks[v]
        blocks[mask] = np.ascontiguousarray(block, dtype=np.int64)
    return JVector(p, blocks)


@lru_cache(maxsize=64)
def j_coefficients(n: int, k: int, mask: int) -> np.ndarray:
    """(n^k, n^k) integer matrix C with J_u = C @ x.

    C[i, j] = prod_{c in u} (n [i_c == j_c] - 1).
    """
    t = all_tuples(n, k)
    C = np.ones((n**k, n**k), dtype=np.int64)
    for c in mask_columns(mask):
        C *= n * (t[:, None, c] == t[None, :, c]) - 1
    return C


def j_form(n: int, k: int, mask: int, digits) -> np.ndarray:
    """Integer coefficients of the linear form J_u(digits) over the counts."""
    return j_coefficients(n, k, mask)[tuple_rank(digits, n)]


def reconstruct(jv: JVector) -> np.ndarray:
    """Sum of all J-blocks, which equals n^k x."""
    return sum(jv.blocks.values())


@lru_cache(maxsize=16)
def h_matrix(k: int) -> np.ndarray:
    """2^k x 2^k +-1 matrix whose row u is the Hadamard product of columns in u."""
    z = 2 * all_tuples(2, k) - 1
    H = np.ones((2**k, 2**k), dtype=np.int64)
    for row, mask in enumerate(h_order(k)):
        for c in mask_columns(mask):
            H[row] *= z[:, c]
    return H


def _require_binary(n: int):
    if n != 2:
        raise UnsupportedAlphabet(f"needs n = 2, got n = {n}")


def signed_j_transform(fv: FrequencyVector) -> SignedJVector:
    _require_binary(fv.params.n)
    k = fv.params.k
    return SignedJVector(k, tuple(int(v) for v in h_matrix(k) @ fv.array()))


def inverse_signed_j(sj: SignedJVector) -> tuple[int, ...]:
    num = h_matrix(sj.k).T @ np.array(sj.entries, dtype=np.int64)
    q, r = np.divmod(num, 2**sj.k)
    if r.any():
        raise ValueError("signed J vector does not come from an integer count vector")
    return tuple(int(v) for v in q)


def signed_j_of_array(rows_pm1) -> SignedJVector:
    """J_r(l)(D) = sum over rows of prod_{j in l} d_ij, straight from a +-1 array."""
    rows = np.asarray(rows_pm1, dtype=np.int64)
    k = rows.shape[1]
    out = []
    for mask in h_order(k):
        cols = list(mask_columns(mask))
        out.append(int(rows[:, cols].prod(axis=1).sum()) if cols else len(rows))
    return SignedJVector(k, tuple(out))


def consistency_check(fv: FrequencyVector) -> bool:
    _require_binary(fv.params.n)
    jv = anova_transform(fv)
    sj = signed_j_transform(fv)
    ones = (1,) * fv.params.k
    return all(jv.value(m, ones) == v for m, v in sj.by_mask().items())


def sign_pattern(jv: JVector, mask: int, tup_pm1) -> int:
    """Predict J_u at a +-1 word from J_u(1, ..., 1).

    J_u(i) = (-1)^{|u| - d} J_u(1, ..., 1), d the Hamming distance of i_u from
    the all -1 word, i.e. the number of +1 entries of i inside u.
    """
    _require_binary(jv.params.n)
    k = jv.params.k
    if len(tup_pm1) != k or any(v not in (-1, 1) for v in tup_pm1):
        raise ValueError("expected a +-1 word of length k")
    cols = mask_columns(mask)
    d = sum(1 for c in cols if tup_pm1[c] == 1)
    return (-1) ** (len(cols) - d) * jv.value(mask, (1,) * k)


def check_strength_J(jv: JVector, s: int) -> bool:
    return all(jv.is_zero(m) for m in jv.blocks if 1 <= popcount(m) <= s)


def expected_mu_residue(n: int, s: int, lam: int, ell: int) -> int:
    return (-1) ** ell * lam * math.comb(s + ell - 1, ell - 1) % n


@dataclass
class CongruenceEntry:
    u: tuple[int, ...]
    digits: tuple[int, ...]
    mu: Fraction
    expected: int
    ok: bool


@dataclass
class CongruenceReport:
    entries: list[CongruenceEntry]

    @property
    def violations(self) -> list[CongruenceEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def passed(self) -> bool:
        return not self.violations


def congruence_report(jv: JVector, s: int | None = None, lam: int | None = None) -> CongruenceReport:
    """Check mu_u = J_u / n^s against (-1)^l lam C(s+l-1, l-1) mod n for |u| = s+l."""
    p = jv.params
    s = p.s if s is None else s
    if not check_strength_J(jv, s):
        raise PreconditionError(f"J vector is not of strength {s}")
    if lam is None:
        lam = int(jv.blocks[0][0]) // p.n**s
    ns = p.n**s
    entries = []
    for mask in h_order(p.k):
        size = popcount(mask)
        if size <= s:
            continue
        ell = size - s
        expected = expected_mu_residue(p.n, s, lam, ell)
        cols = mask_columns(mask)
        for digits, val in zip(itertools.product(range(p.n), repeat=size), jv.values_on_u(mask)):
            mu = Fraction(val, ns)
            ok = mu.denominator == 1 and mu.numerator % p.n == expected
            entries.append(CongruenceEntry(cols, digits, mu, expected, ok))
    return CongruenceReport(entries)


def binomial_identity_check(s: int, r: int) -> bool:
    """The two alternating binomial sums: 0 (for r >= 2) and -1."""
    if s < 1 or r < 1:
        raise ValueError("need s >= 1 and r >= 1")
    comb = math.comb
    zero_sum = sum((-1) ** (i + 1) * comb(s + i, i) * comb(s + r - 1, s + i) for i in range(r))
    minus_sum = sum((-1) ** (i + 1) * comb(s + i, i) * comb(s + r, s + i + 1) for i in range(r))
    return (r < 2 or zero_sum == 0) and minus_sum == -1
