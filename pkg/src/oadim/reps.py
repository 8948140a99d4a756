"""Exact projectors onto invariant subspaces of the count space.

A projector is stored as integer numerator matrices over a common positive
denominator: P = (re + i*im) / den. Complex entries are therefore Gaussian
rationals; the real closed forms never carry an imaginary part.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arrays import FrequencyVector
from .groups import OrbitPartition, ResourceError, as_perm
from .linalg import exact_matmul

DEFAULT_MAX_DIM = 4096


class InconsistentDecomposition(ValueError):
    pass


def _reduce(re, im, den):
    vals = [den] + np.unique(re).tolist()
    if im is not None:
        vals += np.unique(im).tolist()
    g = math.gcd(*(int(v) for v in vals))
    if g > 1:
        re = re // g
        im = None if im is None else im // g
        den //= g
    return re, im, den


@dataclass(eq=False)
class Projector:
    re: np.ndarray
    den: int = 1
    im: np.ndarray | None = None

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        if self.im is not None and not self.im.any():
            self.im = None
        self.re, self.im, self.den = _reduce(self.re, self.im, self.den)

    @property
    def dim_ambient(self) -> int:
        return self.re.shape[0]

    @property
    def is_real(self) -> bool:
        return self.im is None

    @property
    def rank(self) -> int:
        """trace(P), an integer for any orthogonal projector."""
        tr = Fraction(int(np.trace(self.re)), self.den)
        if tr.denominator != 1:
            raise InconsistentDecomposition(f"trace {tr} is not an integer")
        return int(tr)

    def entry(self, i: int, j: int) -> Fraction | tuple[Fraction, Fraction]:
        re = Fraction(int(self.re[i, j]), self.den)
        if self.im is None:
            return re
        return (re, Fraction(int(self.im[i, j]), self.den))

    def __add__(self, other: "Projector") -> "Projector":
        d = math.lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        re = self.re * a + other.re * b
        if self.im is None and other.im is None:
            im = None
        else:
            im = (0 if self.im is None else self.im * a) + (0 if other.im is None else other.im * b)
            im = np.asarray(im)
        return Projector(re, d, im)

    def _square(self):
        re2 = exact_matmul(self.re, self.re)
        if self.im is None:
            return re2, None
        im = self.im
        return re2 - exact_matmul(im, im), exact_matmul(self.re, im) + exact_matmul(im, self.re)

    def is_idempotent(self) -> bool:
        re2, im2 = self._square()
        if not np.array_equal(re2, self.den * self.re.astype(object)):
            return False
        if self.im is None:
            return im2 is None
        return np.array_equal(im2, self.den * self.im.astype(object))

    def is_hermitian(self) -> bool:
        ok = np.array_equal(self.re, self.re.T)
        return ok and (self.im is None or np.array_equal(self.im, -self.im.T))

    def times(self, other: "Projector") -> "Projector | None":
        """Product, or None when it vanishes."""
        re = exact_matmul(self.re, other.re)
        im = None
        if self.im is not None or other.im is not None:
            zs = np.zeros_like(self.re)
            zo = np.zeros_like(other.re)
            si = zs if self.im is None else self.im
            oi = zo if other.im is None else other.im
            re = re - exact_matmul(si, oi)
            im = exact_matmul(self.re, oi) + exact_matmul(si, other.re)
        if not re.any() and (im is None or not im.any()):
            return None
        return Projector(re, self.den * other.den, im)

    def annihilates_rows(self, A: np.ndarray) -> bool:
        """True iff every row of A is orthogonal to the range of P, i.e. A P = 0."""
        if A.size == 0:
            return True
        if A.shape[1] != self.dim_ambient:
            raise ValueError(f"matrix has {A.shape[1]} columns, projector acts on {self.dim_ambient}")
        if exact_matmul(A, self.re).any():
            return False
        return self.im is None or not exact_matmul(A, self.im).any()

    def apply_int(self, v) -> np.ndarray:
        """Numerator of P v (real part) for an integer vector v."""
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        return exact_matmul(self.re, v).ravel()

    def kills(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        if exact_matmul(self.re, v).any():
            return False
        return self.im is None or not exact_matmul(self.im, v).any()

    def commutes_with(self, perm) -> bool:
        """Q P = P Q for the permutation matrix of ``perm``."""
        p = np.asarray(as_perm(perm))
        ok = np.array_equal(self.re[np.ix_(p, p)], self.re)
        return ok and (self.im is None or np.array_equal(self.im[np.ix_(p, p)], self.im))

    def to_json(self) -> dict:
        def fmt(M):
            return [[str(Fraction(int(v), self.den)) for v in row] for row in M.tolist()]
        out = {"dim": self.dim_ambient, "rank": self.rank, "re": fmt(self.re)}
        if self.im is not None:
            out["im"] = fmt(self.im)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Projector":
        re = [[Fraction(v) for v in row] for row in obj["re"]]
        im = [[Fraction(v) for v in row] for row in obj["im"]] if "im" in obj else None
        d = math.lcm(*(f.denominator for row in re + (im or []) for f in row))
        to_int = lambda M: np.array([[int(f * d) for f in row] for row in M], dtype=np.int64)
        return cls(to_int(re), d, None if im is None else to_int(im))


def identity_projector(m: int) -> Projector:
    return Projector(np.eye(m, dtype=np.int64), 1)


def sum_projectors(ps) -> Projector:
    ps = list(ps)
    total = ps[0]
    for p in ps[1:]:
        total = total + p
    return total


def is_identity(p: Projector) -> bool:
    return p.im is None and p.den == 1 and np.array_equal(p.re, np.eye(p.dim_ambient, dtype=np.int64))


@dataclass
class DecompositionU:
    n: int
    k: int
    projectors: list[Projector]

    def dims(self) -> list[int]:
        return [p.rank for p in self.projectors]


@dataclass
class DecompositionW:
    k: int
    projectors: list[Projector]
    parts: list[tuple[int, ...]]

    def dims(self) -> list[int]:
        return [p.rank for p in self.projectors]


def _check_budget(m: int, max_dim: int):
    if m > max_dim:
        raise ResourceError(f"ambient dimension {m} exceeds cap {max_dim}")


def build_U_projectors(n: int, k: int, max_dim: int = DEFAULT_MAX_DIM) -> DecompositionU:
    """P_{U_r} = sum_{|u|=r} kron over columns of (n I - J if in u else J), over n^k."""
    _check_budget(n**k, max_dim)
    ones = np.ones((n, n), dtype=np.int64)
    centre = n * np.eye(n, dtype=np.int64) - ones
    nums = [np.zeros((n**k, n**k), dtype=np.int64) for _ in range(k + 1)]
    for eps in itertools.product((0, 1), repeat=k):
        M = np.ones((1, 1), dtype=np.int64)
        for e in eps:
            M = np.kron(M, centre if e else ones)
        nums[sum(eps)] += M
    return DecompositionU(n, k, [Projector(M, n**k) for M in nums])


def w_parts(k: int) -> list[tuple[int, ...]]:
    """Which U_r make up each W_j: (0,), (1, 2), (3, 4), ..., top block by parity."""
    parts = [(0,)]
    for j in range(1, math.ceil(k / 2) + 1):
        parts.append(tuple(r for r in (2 * j - 1, 2 * j) if r <= k))
    return parts


def build_W_projectors(k: int, max_dim: int = DEFAULT_MAX_DIM) -> DecompositionW:
    U = build_U_projectors(2, k, max_dim).projectors
    parts = w_parts(k)
    return DecompositionW(k, [sum_projectors(U[r] for r in part) for part in parts], parts)


def fixed_subspace_projector(orbits: OrbitPartition) -> Projector:
    """E_ij = 1/|O| when i, j share orbit O, else 0."""
    m = sum(len(c) for c in orbits.classes)
    if not orbits.is_partition_of(range(m)):
        raise ValueError("orbits do not partition range(m)")
    den = math.lcm(*(len(c) for c in orbits.classes))
    E = np.zeros((m, m), dtype=np.int64)
    for c in orbits.classes:
        idx = sorted(c)
        E[np.ix_(idx, idx)] = den // len(c)
    return Projector(E, den)


def method1_real_from_complex(projectors: list[Projector]) -> list[Projector]:
    """Real irreducible projectors from a multiplicity-free complex decomposition.

    Real inputs pass through; non-real inputs are paired with the first later
    non-real input of the same rank whose sum is real.
    """
    out = [p for p in projectors if p.is_real]
    used = [p.is_real for p in projectors]
    for i, p in enumerate(projectors):
        if used[i]:
            continue
        for j in range(i + 1, len(projectors)):
            q = projectors[j]
            if used[j] or q.rank != p.rank:
                continue
            s = p + q
            if s.is_real:
                out.append(s)
                used[i] = used[j] = True
                break
    if not all(used):
        bad = [i for i, u in enumerate(used) if not u]
        raise InconsistentDecomposition(
            f"projectors {bad} are neither real nor part of a conjugate pair")
    return out


def centred_numerators(points: list[FrequencyVector]) -> list[np.ndarray]:
    """n^k (x - (N / n^k) 1) for each point; integer vectors."""
    if not points:
        raise ValueError("no points")
    out = []
    for fv in points:
        m = fv.params.size
        out.append(m * fv.array() - fv.total)
    return out


def invariant_span_components(points: list[FrequencyVector], decomposition: list[Projector]) -> set[int]:
    ys = centred_numerators(points)
    return {r for r, P in enumerate(decomposition) if any(not P.kills(y) for y in ys)}
