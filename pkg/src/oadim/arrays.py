"""Parameter sets, tuple indexing, symbol arrays and frequency vectors.

Tuples over ``{0, ..., n-1}^k`` are ranked big-endian: column 0 is the most
significant digit, so rank order is the lexicographic order of rows.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np


class ParameterError(ValueError):
    """Raised when inputs are inconsistent with an OA parameter set."""


@dataclass(frozen=True)
class OAParams:
    n: int
    k: int
    s: int
    lam: int = 1
    p_max: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")
        if not 0 <= self.s <= self.k:
            raise ParameterError(f"need 0 <= s <= k, got s={self.s}, k={self.k}")
        if self.lam < 1:
            raise ParameterError(f"lambda must be >= 1, got {self.lam}")
        if self.p_max is None:
            object.__setattr__(self, "p_max", self.lam)
        if not 1 <= self.p_max <= self.lam:
            raise ParameterError(f"need 1 <= p_max <= lambda, got {self.p_max}")

    @property
    def N(self) -> int:
        return self.lam * self.n**self.s

    @property
    def size(self) -> int:
        """Number of count variables, n^k."""
        return self.n**self.k

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "s": self.s, "lambda": self.lam, "p_max": self.p_max}


def tuple_rank(digits, n: int) -> int:
    r = 0
    for d in digits:
        if not 0 <= d < n:
            raise ParameterError(f"digit {d} out of range for n={n}")
        r = r * n + d
    return r


def tuple_unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    if not 0 <= rank < n**k:
        raise ParameterError(f"rank {rank} out of range for n={n}, k={k}")
    out = [0] * k
    for j in range(k - 1, -1, -1):
        rank, out[j] = divmod(rank, n)
    return tuple(out)


@lru_cache(maxsize=64)
def all_tuples(n: int, k: int) -> np.ndarray:
    """(n^k, k) array of every word, row r holding the digits of rank r."""
    return np.array(list(itertools.product(range(n), repeat=k)), dtype=np.int64).reshape(n**k, k)


@dataclass(frozen=True)
class SymbolArray:
    rows: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        if not self.rows:
            raise ParameterError("array has no rows")
        k = len(self.rows[0])
        for row in self.rows:
            if len(row) != k:
                raise ParameterError("ragged array")
            if any(not 0 <= v < self.n for v in row):
                raise ParameterError(f"symbol out of range in row {row}")

    @property
    def k(self) -> int:
        return len(self.rows[0])

    @property
    def N(self) -> int:
        return len(self.rows)

    @classmethod
    def from_pm1(cls, rows) -> "SymbolArray":
        """Build from a +-1 array using -1 -> 0, +1 -> 1."""
        return cls(tuple(tuple((v + 1) // 2 for v in row) for row in rows), 2)


@dataclass(frozen=True)
class FrequencyVector:
    params: OAParams
    counts: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.counts) != self.params.size:
            raise ParameterError(
                f"expected {self.params.size} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ParameterError("negative count")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def array(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)

    def tensor(self) -> np.ndarray:
        """Counts reshaped to (n,)*k with axis j for column j."""
        return self.array().reshape((self.params.n,) * self.params.k)

    def within_cap(self) -> bool:
        return max(self.counts) <= self.params.p_max

    def to_json(self) -> dict:
        p = self.params
        return {"n": p.n, "k": p.k, "lambda": p.lam, "s": p.s, "counts": list(self.counts)}

    @classmethod
    def from_json(cls, obj: dict) -> "FrequencyVector":
        params = OAParams(obj["n"], obj["k"], obj["s"], obj.get("lambda", 1), obj.get("p_max"))
        return cls(params, tuple(int(c) for c in obj["counts"]))


def array_to_frequency(arr: SymbolArray, params: OAParams, check_N: bool = True) -> FrequencyVector:
    if arr.k != params.k or arr.n != params.n:
        raise ParameterError(
            f"array is {arr.n}-symbol with {arr.k} columns, params want n={params.n}, k={params.k}")
    if check_N and arr.N != params.N:
        raise ParameterError(f"array has {arr.N} rows, params imply N={params.N}")
    counts = [0] * params.size
    for row in arr.rows:
        counts[tuple_rank(row, params.n)] += 1
    return FrequencyVector(params, tuple(counts))


def counts_vector(arr: SymbolArray) -> FrequencyVector:
    """Frequency vector of an arbitrary array, with s=0 and lambda=N."""
    return array_to_frequency(arr, OAParams(arr.n, arr.k, 0, arr.N), check_N=False)


def margin_table(fv: FrequencyVector, cols) -> np.ndarray:
    """Counts summed over every column not in ``cols``; axes follow sorted ``cols``."""
    k = fv.params.k
    drop = tuple(j for j in range(k) if j not in set(cols))
    return fv.tensor().sum(axis=drop) if drop else fv.tensor()


def first_strength_violation(fv: FrequencyVector, s: int):
    """First (columns, symbols, count, expected) whose margin is off, or None.

    Returns ``((), (), total, None)`` when N is not divisible by n^s.
    """
    p = fv.params
    if s > p.k:
        raise ParameterError(f"strength {s} exceeds k={p.k}")
    total = fv.total
    lam, rem = divmod(total, p.n**s)
    if rem:
        return ((), (), total, None)
    for cols in itertools.combinations(range(p.k), s):
        table = margin_table(fv, cols)
        bad = np.argwhere(table != lam)
        if len(bad):
            sym = tuple(int(v) for v in bad[0])
            return (cols, sym, int(table[tuple(bad[0])]), lam)
    return None


def check_strength_direct(fv: FrequencyVector, s: int) -> bool:
    return first_strength_violation(fv, s) is None


def read_array(path) -> SymbolArray:
    """Read the plain-text array format: header ``n k N`` then N rows."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"{path}: empty array file")
    n, k, N = (int(v) for v in lines[0])
    rows = tuple(tuple(int(v) for v in ln) for ln in lines[1:])
    if len(rows) != N:
        raise ParameterError(f"{path}: header says N={N}, found {len(rows)} rows")
    if any(len(r) != k for r in rows):
        raise ParameterError(f"{path}: rows must have {k} entries")
    return SymbolArray(rows, n)


def write_array(arr: SymbolArray, path) -> None:
    body = "\n".join(" ".join(str(v) for v in row) for row in arr.rows)
    Path(path).write_text(f"{arr.n} {arr.k} {arr.N}\n{body}\n")


def read_frequency(path) -> FrequencyVector:
    return FrequencyVector.from_json(json.loads(Path(path).read_text()))


def frequency_to_array(fv: FrequencyVector) -> SymbolArray:
    p = fv.params
    rows = []
    for r, c in enumerate(fv.counts):
        rows.extend([tuple_unrank(r, p.n, p.k)] * c)
    return SymbolArray(tuple(rows), p.n)
