"""Paratopisms, the orthogonal-design column operations, orbits and Burnside counts.

Every group element is lowered to a permutation of tuple ranks (``perm[r]``
is the rank of the image of tuple r) before any orbit work, so orbit code
does not care where an element came from. Columns are 0-based.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .anova import UnsupportedAlphabet
from .arrays import FrequencyVector, ParameterError, all_tuples, tuple_rank


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


Perm = tuple[int, ...]


def _check_perm(p, m, what):
    if sorted(p) != list(range(m)):
        raise ParameterError(f"{what} {p} is not a permutation of range({m})")


@dataclass(frozen=True)
class Paratopism:
    """((h_1, ..., h_k), g): t'_j = h_j(t_{g^-1(j)})."""

    col_perms: tuple[tuple[int, ...], ...]
    col_shuffle: tuple[int, ...]

    def __post_init__(self):
        k = len(self.col_perms)
        if len(self.col_shuffle) != k:
            raise ParameterError("col_shuffle and col_perms disagree on k")
        _check_perm(self.col_shuffle, k, "column shuffle")
        n = len(self.col_perms[0])
        for h in self.col_perms:
            _check_perm(h, n, "symbol permutation")

    @property
    def k(self) -> int:
        return len(self.col_perms)

    @property
    def n(self) -> int:
        return len(self.col_perms[0])

    @classmethod
    def identity(cls, k: int, n: int) -> "Paratopism":
        return cls(tuple(tuple(range(n)) for _ in range(k)), tuple(range(k)))

    def __call__(self, t):
        return apply_paratopism(self, t)

    def __mul__(self, other: "Paratopism") -> "Paratopism":
        """self * other applies ``other`` first."""
        ginv = _inverse(self.col_shuffle)
        h = tuple(tuple(self.col_perms[j][other.col_perms[ginv[j]][a]] for a in range(self.n))
                  for j in range(self.k))
        g = tuple(self.col_shuffle[other.col_shuffle[j]] for j in range(self.k))
        return Paratopism(h, g)

    def perm(self) -> Perm:
        return tuple(tuple_rank(self(t), self.n) for t in all_tuples(self.n, self.k).tolist())

    def to_json(self) -> dict:
        return {"col_perms": [list(h) for h in self.col_perms], "col_shuffle": list(self.col_shuffle)}


def _inverse(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def apply_paratopism(p: Paratopism, t) -> tuple[int, ...]:
    if len(t) != p.k:
        raise ParameterError(f"tuple of length {len(t)} for a paratopism on {p.k} columns")
    ginv = _inverse(p.col_shuffle)
    return tuple(p.col_perms[j][t[ginv[j]]] for j in range(p.k))


def apply_R(j: int, t_pm1) -> tuple[int, ...]:
    """Column operation R_j on a +-1 word: t_i -> t_i t_j for i != j."""
    if any(v not in (-1, 1) for v in t_pm1):
        raise UnsupportedAlphabet("R_j acts on +-1 words of a two-symbol array")
    if not 0 <= j < len(t_pm1):
        raise ParameterError(f"column {j} out of range")
    tj = t_pm1[j]
    return tuple(v if i == j else v * tj for i, v in enumerate(t_pm1))


def r_perm(j: int, k: int) -> Perm:
    out = []
    for t in all_tuples(2, k).tolist():
        pm = apply_R(j, [2 * v - 1 for v in t])
        out.append(tuple_rank([(v + 1) // 2 for v in pm], 2))
    return tuple(out)


@dataclass(frozen=True)
class ODWord:
    """R_{r_ops[0]}, then R_{r_ops[1]}, ..., then the paratopism ``tail``."""

    r_ops: tuple[int, ...]
    tail: Paratopism

    def __post_init__(self):
        if self.tail.n != 2:
            raise UnsupportedAlphabet("orthogonal-design words need n = 2")

    def perm(self) -> Perm:
        k = self.tail.k
        p = tuple(range(2**k))
        for j in self.r_ops:
            p = compose(r_perm(j, k), p)
        return compose(self.tail.perm(), p)


def compose(a: Perm, b: Perm) -> Perm:
    """a after b."""
    return tuple(a[i] for i in b)


def as_perm(el) -> Perm:
    if isinstance(el, tuple) and (not el or isinstance(el[0], (int, np.integer))):
        return tuple(int(v) for v in el)
    return el.perm()


def giso_generators(k: int, n: int) -> list[Paratopism]:
    """Adjacent column swaps plus, per column, a symbol transposition and an n-cycle."""
    ident = Paratopism.identity(k, n)
    gens = []
    for j in range(k - 1):
        g = list(range(k))
        g[j], g[j + 1] = g[j + 1], g[j]
        gens.append(Paratopism(ident.col_perms, tuple(g)))
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((a + 1) % n for a in range(n))
    for j in range(k):
        for h in dict.fromkeys([swap, cycle]):
            hs = list(ident.col_perms)
            hs[j] = h
            gens.append(Paratopism(tuple(hs), ident.col_shuffle))
    return gens


def god_generators(k: int) -> list:
    """Generators of G(k)^OD: the paratopisms of the binary case plus R_0..R_{k-1}."""
    ident = Paratopism.identity(k, 2)
    return giso_generators(k, 2) + [ODWord((j,), ident) for j in range(k)]


def permutation_matrix(perm: Perm) -> np.ndarray:
    m = len(perm)
    Q = np.zeros((m, m), dtype=np.int64)
    Q[list(perm), list(range(m))] = 1
    return Q


def act_on_counts(perm: Perm, counts) -> tuple[int, ...]:
    out = [0] * len(counts)
    for r, c in enumerate(counts):
        out[perm[r]] = c
    return tuple(out)


def orbit_of_point(generators, fv: FrequencyVector, cap: int = 10**6) -> set[FrequencyVector]:
    perms = [as_perm(g) for g in generators]
    for p in perms:
        if len(p) != fv.params.size:
            raise ParameterError("generator does not act on this tuple space")
    seen = {fv.counts}
    queue = deque([fv.counts])
    while queue:
        c = queue.popleft()
        for p in perms:
            d = act_on_counts(p, c)
            if d not in seen:
                seen.add(d)
                if len(seen) > cap:
                    raise ResourceError(f"orbit larger than cap {cap}")
                queue.append(d)
    return {FrequencyVector(fv.params, c) for c in seen}


def enumerate_group(generators, cap: int = 10**7) -> set[Perm]:
    perms = [as_perm(g) for g in generators]
    ident = tuple(range(len(perms[0]))) if perms else ()
    elems = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for p in perms:
            h = compose(p, g)
            if h not in elems:
                elems.add(h)
                if len(elems) > cap:
                    raise ResourceError(f"group order exceeds cap {cap}")
                queue.append(h)
    return elems


def group_order(generators, cap: int = 10**7) -> int:
    return len(enumerate_group(generators, cap))


def burnside_orbit_count(generators, m: int, cap: int = 10**7, size: int | None = None) -> int:
    """Orbits on X^m: (1/|G|) sum_h F(h)^m. An empty generator list is the trivial group on ``size`` points."""
    if not generators:
        if size is None:
            raise ParameterError("trivial group needs an explicit point count")
        return size**m
    elems = enumerate_group(generators, cap)
    total = sum(sum(1 for i, v in enumerate(h) if i == v) ** m for h in elems)
    q, r = divmod(total, len(elems))
    assert r == 0, "Burnside sum not divisible by group order"
    return q


@dataclass
class OrbitPartition:
    classes: list[frozenset]

    def __len__(self):
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def is_partition_of(self, universe) -> bool:
        seen = set()
        for c in self.classes:
            if seen & c:
                return False
            seen |= c
        return seen == set(universe)

    def canonical(self) -> list[tuple]:
        return sorted(tuple(sorted(c)) for c in self.classes)


def _hamming_matrix(k: int, n: int, max_points: int) -> np.ndarray:
    if n**k > max_points:
        raise ResourceError(f"n^k = {n**k} exceeds point budget {max_points}")
    t = all_tuples(n, k)
    return (t[:, None, :] != t[None, :, :]).sum(axis=2)


def _partition_by(labels: np.ndarray, groups: dict) -> OrbitPartition:
    m = labels.shape[0]
    classes = []
    for key in sorted(groups):
        a, b = np.nonzero(np.isin(labels, groups[key]))
        classes.append(frozenset(zip(a.tolist(), b.tolist())))
    assert sum(len(c) for c in classes) == m * m
    return OrbitPartition(classes)


def hamming_orbits_X2(k: int, n: int, max_points: int = 4096) -> OrbitPartition:
    D = _hamming_matrix(k, n, max_points)
    return _partition_by(D, {i: [i] for i in range(k + 1)})


def od_orbits_X2(k: int, max_points: int = 4096) -> OrbitPartition:
    """Pairs at distance i and k+1-i merge; the diagonal stays alone."""
    D = _hamming_matrix(k, 2, max_points)
    groups = {0: [0]}
    for i in range(1, math.ceil(k / 2) + 1):
        groups[i] = sorted({i, k + 1 - i})
    return _partition_by(D, groups)


class _UnionFind:
    def __init__(self, m):
        self.parent = list(range(m))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def point_orbits(generators, size: int) -> OrbitPartition:
    uf = _UnionFind(size)
    for g in generators:
        p = as_perm(g)
        for i in range(size):
            uf.union(i, p[i])
    groups: dict[int, set] = {}
    for i in range(size):
        groups.setdefault(uf.find(i), set()).add(i)
    return OrbitPartition([frozenset(v) for _, v in sorted(groups.items())])


def pair_orbits(generators, size: int) -> OrbitPartition:
    """Orbits of the diagonal action on X x X, from generators alone."""
    uf = _UnionFind(size * size)
    for g in generators:
        p = as_perm(g)
        for a in range(size):
            pa = p[a] * size
            base = a * size
            for b in range(size):
                uf.union(base + b, pa + p[b])
    groups: dict[int, set] = {}
    for i in range(size * size):
        groups.setdefault(uf.find(i), set()).add(divmod(i, size))
    return OrbitPartition([frozenset(v) for _, v in sorted(groups.items())])


def is_multiplicity_free(generators, size: int, n_components: int) -> bool:
    """A decomposition into ``n_components`` irreducibles is multiplicity-free
    iff the number of orbits on X x X equals ``n_components``."""
    return len(pair_orbits(generators, size)) == n_components


def element_from_json(obj: dict, k: int | None = None, n: int | None = None):
    if "R" in obj:
        if k is None:
            raise ParameterError("an R element needs k")
        return ODWord((int(obj["R"]),), Paratopism.identity(k, 2))
    return Paratopism(tuple(tuple(h) for h in obj["col_perms"]), tuple(obj["col_shuffle"]))


def element_to_json(el) -> dict:
    if isinstance(el, ODWord) and len(el.r_ops) == 1 and el.tail == Paratopism.identity(el.tail.k, 2):
        return {"R": el.r_ops[0]}
    if isinstance(el, Paratopism):
        return el.to_json()
    raise ValueError(f"cannot serialise {el!r}")


def read_generators(path, k: int | None = None, n: int | None = None) -> list:
    return [element_from_json(o, k, n) for o in json.loads(Path(path).read_text())]


def write_generators(gens, path) -> None:
    Path(path).write_text(json.dumps([element_to_json(g) for g in gens], indent=1) + "\n")
