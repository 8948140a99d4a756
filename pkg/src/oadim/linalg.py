"""Exact integer/rational rank via fraction-free row reduction.

Rows are reduced against an integer echelon basis by cross-multiplication
and then divided by their content (gcd of entries), so entries stay small
and no division ever leaves the integers.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def _as_int_row(row) -> np.ndarray:
    vals = list(row)
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in vals):
        den = math.lcm(*(Fraction(v).denominator for v in vals))
        vals = [Fraction(v) * den for v in vals]
    return np.array([int(v) for v in vals], dtype=object)


def _primitive(v: np.ndarray) -> np.ndarray:
    g = math.gcd(*v.tolist())
    return v // g if g > 1 else v


class Echelon:
    """Incrementally built row-echelon basis over the integers."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: list[int] = []
        self.rows: list[np.ndarray] = []
        self._by_pivot: dict[int, np.ndarray] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row) -> np.ndarray:
        v = _as_int_row(row)
        if len(v) != self.ncols:
            raise ValueError(f"row has {len(v)} entries, expected {self.ncols}")
        for p in self.pivots:
            a = v[p]
            if a:
                b = self._by_pivot[p]
                v = _primitive(b[p] * v - a * b)
        return v

    def add(self, row) -> bool:
        """Insert a row; True if it increased the rank."""
        if self.rank == self.ncols:
            return False
        v = self.reduce(row)
        nz = np.flatnonzero(v != 0)
        if not len(nz):
            return False
        p = int(nz[0])
        if v[p] < 0:
            v = -v
        self.pivots.append(p)
        self.pivots.sort()
        self._by_pivot[p] = v
        self.rows.append(v)
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row).any()


def rank(rows, ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ech = Echelon(len(rows[0]) if ncols is None else ncols)
    for r in rows:
        ech.add(r)
    return ech.rank


def row_space_equal(a_rows, b_rows, ncols: int) -> bool:
    ea, eb = Echelon(ncols), Echelon(ncols)
    for r in a_rows:
        ea.add(r)
    for r in b_rows:
        eb.add(r)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(r) for r in eb.rows)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product, int64 when provably safe and Python ints otherwise."""
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[-1]), dtype=np.int64)
    ma = int(np.abs(a).max())
    mb = int(np.abs(b).max())
    if ma * mb * a.shape[-1] < 2**62:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)
