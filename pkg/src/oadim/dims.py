"""Admissible dimensions of the OA integer hull and the matching zero-RHS families.

Two lattices are supported. ``general`` uses interaction-order offsets
l in [1, k-s] that the mu-congruence lets vanish; each realised l removes the
whole U_{s+l} block. ``n2-even-s`` (n = 2, even s) uses the coarser paired
blocks W = U_{s+d+1} + U_{s+d+2} for even d in [0, k-s-1].
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .anova import j_coefficients, mask_columns, masks_of_size
from .arrays import OAParams, ParameterError, tuple_rank
from .groups import ResourceError
from .reps import Projector, method1_real_from_complex

GENERAL = "general"
N2_EVEN_S = "n2-even-s"


def auto_mode(params: OAParams) -> str:
    return N2_EVEN_S if params.n == 2 and params.s % 2 == 0 else GENERAL


def base_dimension(params: OAParams) -> int:
    """n^k minus the number of non-redundant marginal equalities."""
    n, k, s = params.n, params.k, params.s
    return n**k - sum(math.comb(k, j) * (n - 1) ** j for j in range(s + 1))


@dataclass
class OmegaSet:
    params: OAParams
    mode: str
    members: tuple[int, ...]
    degenerate: bool = False  # k <= s: nothing beyond strength, base dimension 0

    def block_sizes(self, t) -> tuple[int, ...]:
        """J-block sizes |u| forced to vanish by offset t."""
        s, k = self.params.s, self.params.k
        if self.mode == GENERAL:
            return (s + t,)
        return tuple(m for m in (s + t + 1, s + t + 2) if m <= k)


def _resolve_mode(params: OAParams, mode: str | None) -> str:
    mode = auto_mode(params) if mode is None else mode
    if mode not in (GENERAL, N2_EVEN_S):
        raise ParameterError(f"unknown mode {mode!r}")
    if mode == N2_EVEN_S and not (params.n == 2 and params.s % 2 == 0):
        raise ParameterError("n2-even-s mode needs n = 2 and even s")
    return mode


def compute_omega(params: OAParams, mode: str | None = None) -> OmegaSet:
    mode = _resolve_mode(params, mode)
    n, k, s, lam = params.n, params.k, params.s, params.lam
    if k <= s:
        return OmegaSet(params, mode, (), degenerate=True)
    if mode == GENERAL:
        members = [l for l in range(1, k - s + 1) if lam * math.comb(s + l - 1, l - 1) % n == 0]
    else:
        members = [d for d in range(0, k - s, 2) if lam * math.comb(s + d, d) % 2 == 0]
    return OmegaSet(params, mode, tuple(members))


@dataclass
class DimCandidate:
    T: tuple[int, ...]
    dimension: int
    forced_block_sizes: tuple[int, ...]

    def to_json(self) -> dict:
        return {"T": list(self.T), "dimension": self.dimension,
                "forced_block_sizes": list(self.forced_block_sizes)}


@dataclass
class DimReport:
    params: OAParams
    mode: str
    base_dim: int
    omega: OmegaSet
    candidates: list[DimCandidate] = field(default_factory=list)

    @property
    def dimensions(self) -> list[int]:
        return sorted({c.dimension for c in self.candidates}, reverse=True)

    def candidates_for(self, dim: int) -> list[DimCandidate]:
        return [c for c in self.candidates if c.dimension == dim]

    def to_json(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "mode": self.mode,
            "base_dim": self.base_dim,
            "omega": list(self.omega.members),
            "dimensions": self.dimensions,
            "candidates": [c.to_json() for c in self.candidates],
        }


def _block_dim(params: OAParams, size: int) -> int:
    if size > params.k:
        return 0
    return math.comb(params.k, size) * (params.n - 1) ** size


def candidate_dims(params: OAParams, mode: str | None = None, max_omega: int = 20) -> DimReport:
    omega = compute_omega(params, mode)
    if len(omega.members) > max_omega:
        raise ResourceError(f"|Omega| = {len(omega.members)} > {max_omega}")
    base = base_dimension(params)
    cands = []
    for r in range(len(omega.members) + 1):
        for T in itertools.combinations(omega.members, r):
            sizes = tuple(sorted(m for t in T for m in omega.block_sizes(t)))
            cands.append(DimCandidate(T, base - sum(_block_dim(params, m) for m in sizes), sizes))
    return DimReport(params, omega.mode, base, omega, cands)


def full_dim_if_nondivisible(params: OAParams) -> int | None:
    if params.k <= params.s:
        raise ParameterError("needs k > s")
    omega = compute_omega(params, GENERAL)
    return base_dimension(params) if not omega.members else None


@dataclass
class ConstraintRow:
    u: tuple[int, ...]
    digits: tuple[int, ...]
    coeffs: tuple[tuple[int, int], ...]

    def dense(self, size: int) -> np.ndarray:
        v = np.zeros(size, dtype=np.int64)
        for r, c in self.coeffs:
            v[r] = c
        return v

    def to_json(self) -> dict:
        return {"u": list(self.u), "tuple": list(self.digits), "coeffs": [list(rc) for rc in self.coeffs]}


def block_rows(n: int, k: int, sizes) -> list[ConstraintRow]:
    """One row J_u(i) = 0 per u with |u| in ``sizes`` and per digit word on u.

    Coefficients are those of J_u = n^k x_u, which are already integers.
    """
    rows = []
    for size in sorted(set(sizes)):
        for mask in masks_of_size(k, size):
            C = j_coefficients(n, k, mask)
            cols = mask_columns(mask)
            for digits in itertools.product(range(n), repeat=size):
                full = [0] * k
                for c, d in zip(cols, digits):
                    full[c] = d
                r = tuple_rank(full, n)
                nz = np.flatnonzero(C[r])
                rows.append(ConstraintRow(cols, digits, tuple((int(j), int(C[r, j])) for j in nz)))
    return rows


def constraint_family(params: OAParams, T, mode: str | None = None) -> list[ConstraintRow]:
    omega = compute_omega(params, mode)
    T = tuple(sorted(set(T)))
    extra = set(T) - set(omega.members)
    if extra:
        raise ParameterError(f"T contains {sorted(extra)} outside Omega = {list(omega.members)}")
    sizes = [m for t in T for m in omega.block_sizes(t)]
    return block_rows(params.n, params.k, sizes)


def subset_sums(values) -> set[int]:
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums}
    return sums


def method2_candidates(eq_matrix, projectors: list[Projector], multiplicity_free: bool = True) -> set[int]:
    """Possible dim(P_I) from a complex irreducible decomposition and the equality matrix.

    Keeps the components orthogonal to every equality row, merges conjugate
    pairs into real components and returns every sum of their ranks.
    """
    if not multiplicity_free:
        return set()
    A = np.asarray(eq_matrix, dtype=np.int64)
    m = projectors[0].dim_ambient
    if A.size and (A.ndim != 2 or A.shape[1] != m):
        raise ParameterError(f"equality matrix width {A.shape[-1]} != ambient dimension {m}")
    if any(p.dim_ambient != m for p in projectors):
        raise ParameterError("projectors act on different spaces")
    kept = [p for p in projectors if p.annihilates_rows(A.reshape(-1, m))]
    real = method1_real_from_complex(kept)
    return subset_sums(p.rank for p in real)
