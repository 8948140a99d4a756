"""Brute-force ground truth: every OA frequency vector at desk scale, measured exactly.

The search assigns counts variable by variable and keeps, for every s-margin
cell, the amount still needed and the number of unassigned variables in it.
The value range of the next variable is cut to what every one of its cells
can still absorb, so a dead end is never entered.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field


from .anova import anova_transform, check_strength_J, congruence_report, mask_columns, masks_of_size
from .arrays import FrequencyVector, OAParams, ParameterError, all_tuples, check_strength_direct
from .dims import DimCandidate, DimReport, N2_EVEN_S, candidate_dims
from .groups import act_on_counts, as_perm, giso_generators, god_generators
from .linalg import Echelon
from .reps import w_parts

DEFAULT_NODES = 50_000_000
DEFAULT_SECONDS = 600.0


class _Budget(Exception):
    pass


@dataclass
class EnumerationResult:
    params: OAParams
    solutions: list[FrequencyVector]
    complete: bool
    node_count: int
    seconds: float = 0.0

    def summary(self) -> dict:
        return {"params": self.params.as_dict(), "solutions": len(self.solutions),
                "complete": self.complete, "nodes": self.node_count,
                "seconds": round(self.seconds, 3)}

    def to_jsonl(self) -> str:
        lines = [json.dumps(fv.to_json()) for fv in self.solutions]
        lines.append(json.dumps({"summary": self.summary()}))
        return "\n".join(lines) + "\n"


def _cells(params: OAParams) -> tuple[list[list[int]], int, int]:
    """cells_of[r] for every rank r, the number of cells and the cell width."""
    n, k, s = params.n, params.k, params.s
    t = all_tuples(n, k)
    subsets = list(itertools.combinations(range(k), s))
    cells_of = []
    for row in t.tolist():
        ids = []
        for a, cols in enumerate(subsets):
            idx = 0
            for c in cols:
                idx = idx * n + row[c]
            ids.append(a * n**s + idx)
        cells_of.append(ids)
    return cells_of, len(subsets) * n**s, n ** (k - s)


class _Search:
    def __init__(self, params: OAParams, order, node_cap: int, deadline: float):
        self.p = params
        self.order = list(order)
        self.cells_of, ncells, width = _cells(params)
        self.need = [params.lam] * ncells
        self.free = [width] * ncells
        self.x = [0] * params.size
        self.node_cap = node_cap
        self.deadline = deadline
        self.nodes = 0
        self.solutions: list[tuple[int, ...]] = []

    def bounds(self, v: int) -> tuple[int, int]:
        pm = self.p.p_max
        hi, lo = pm, 0
        for c in self.cells_of[v]:
            need = self.need[c]
            if need < hi:
                hi = need
            low = need - pm * (self.free[c] - 1)
            if low > lo:
                lo = low
        return lo, hi

    def assign(self, v: int, val: int):
        self.x[v] = val
        for c in self.cells_of[v]:
            self.need[c] -= val
            self.free[c] -= 1

    def unassign(self, v: int, val: int):
        self.x[v] = 0
        for c in self.cells_of[v]:
            self.need[c] += val
            self.free[c] += 1

    def run(self, pos: int = 0):
        self.nodes += 1
        if self.nodes > self.node_cap or (self.nodes & 0xFFF == 0 and time.monotonic() > self.deadline):
            raise _Budget
        if pos == len(self.order):
            self.solutions.append(tuple(self.x))
            return
        v = self.order[pos]
        lo, hi = self.bounds(v)
        for val in range(hi, lo - 1, -1):
            self.assign(v, val)
            self.run(pos + 1)
            self.unassign(v, val)

    def prefixes(self, depth: int, pos: int = 0, acc=()):
        if pos == depth or pos == len(self.order):
            yield acc
            return
        v = self.order[pos]
        lo, hi = self.bounds(v)
        for val in range(hi, lo - 1, -1):
            self.assign(v, val)
            yield from self.prefixes(depth, pos + 1, acc + (val,))
            self.unassign(v, val)


def _run_subtree(args):
    params, order, prefix, node_cap, deadline = args
    srch = _Search(params, order, node_cap, deadline)
    for v, val in zip(order, prefix):
        srch.assign(v, val)
    complete = True
    try:
        srch.run(len(prefix))
    except _Budget:
        complete = False
    return srch.solutions, srch.nodes, complete


def enumerate_all(params: OAParams, budget_nodes: int = DEFAULT_NODES,
                  budget_seconds: float = DEFAULT_SECONDS, order=None,
                  workers: int = 1, split_depth: int = 2) -> EnumerationResult:
    """All frequency vectors of OA(lambda n^s, k, n, s) with counts <= p_max."""
    order = list(range(params.size)) if order is None else list(order)
    if sorted(order) != list(range(params.size)):
        raise ParameterError("order must be a permutation of the variable indices")
    start = time.monotonic()
    deadline = start + budget_seconds
    if workers <= 1:
        sols, nodes, complete = _run_subtree((params, order, (), budget_nodes, deadline))
    else:
        root = _Search(params, order, budget_nodes, deadline)
        tasks = [(params, order, pre, budget_nodes, deadline) for pre in root.prefixes(split_depth)]
        sols, nodes, complete = [], 0, True
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for s_, n_, c_ in ex.map(_run_subtree, tasks):
                sols.extend(s_)
                nodes += n_
                complete &= c_
        if nodes > budget_nodes:
            complete = False
    sols = sorted(set(sols))
    return EnumerationResult(params, [FrequencyVector(params, s) for s in sols], complete,
                             nodes, time.monotonic() - start)


@dataclass
class AffineDimResult:
    dimension: int
    witness_basis: list[tuple[int, ...]] = field(repr=False)


def affine_dimension(solutions: list[FrequencyVector]) -> AffineDimResult:
    if not solutions:
        raise ParameterError("affine dimension of an empty set")
    x0 = solutions[0].array()
    ech = Echelon(len(x0))
    basis = []
    for fv in solutions[1:]:
        d = fv.array() - x0
        if ech.add(d):
            basis.append(tuple(int(v) for v in d))
    return AffineDimResult(ech.rank, basis)


@dataclass
class VanishingReport:
    k: int
    s: int
    mode: str
    vanishing: set[tuple[int, ...]]

    def sizes(self) -> dict[int, str]:
        """'all', 'none' or 'some' for each subset size 1..k."""
        out = {}
        for r in range(1, self.k + 1):
            here = [mask_columns(m) in self.vanishing for m in masks_of_size(self.k, r)]
            out[r] = "all" if all(here) else "none" if not any(here) else "some"
        return out

    @property
    def vanishing_sizes(self) -> set[int]:
        return {r for r, v in self.sizes().items() if v == "all"}

    @property
    def full_classes(self) -> bool:
        return "some" not in self.sizes().values()

    @property
    def paired(self) -> bool:
        """Beyond the strength, sizes 2j-1 and 2j vanish together."""
        sizes = self.vanishing_sizes
        for part in w_parts(self.k)[1:]:
            if part[0] > self.s and len({r in sizes for r in part}) > 1:
                return False
        return True

    @property
    def structured(self) -> bool:
        return self.full_classes and (self.mode != N2_EVEN_S or self.paired)


def vanishing_blocks(solutions: list[FrequencyVector], mode: str | None = None) -> VanishingReport:
    if not solutions:
        raise ParameterError("no solutions")
    p = solutions[0].params
    for fv in solutions:
        if not check_strength_direct(fv, p.s):
            raise ParameterError("solution is not of the claimed strength")
    mode = mode or candidate_dims(p).mode
    masks = set(range(1, 2**p.k))
    for fv in solutions:
        jv = anova_transform(fv)
        masks = {m for m in masks if jv.is_zero(m)}
    return VanishingReport(p.k, p.s, mode, {mask_columns(m) for m in masks})


@dataclass
class CertifyReport:
    params: OAParams
    enumeration: EnumerationResult
    dim_report: DimReport
    dimension: int | None = None
    vanishing: VanishingReport | None = None
    realized: DimCandidate | None = None
    congruence_violations: int = 0
    closed_under_group: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.enumeration.complete and not self.failures

    def describe(self) -> str:
        p = self.params
        head = f"params n={p.n} k={p.k} s={p.s} lambda={p.lam}"
        lines = [head, f"solutions={len(self.enumeration.solutions)} complete={self.enumeration.complete} "
                       f"nodes={self.enumeration.node_count}"]
        lines.append(f"mode={self.dim_report.mode} omega={list(self.dim_report.omega.members)} "
                     f"candidates={self.dim_report.dimensions}")
        if self.dimension is not None:
            lines.append(f"dim={self.dimension}")
        if self.vanishing is not None:
            lines.append(f"vanishing sizes={sorted(self.vanishing.vanishing_sizes)} "
                         f"structured={self.vanishing.structured}")
        if self.realized is not None:
            removed = [r for r in range(p.s + 1, p.k + 1) if r not in self.realized.forced_block_sizes]
            lines.append(f"T={list(self.realized.T)} forced sizes={list(self.realized.forced_block_sizes)} "
                         f"surviving U blocks={removed}")
        lines.append(f"congruence violations={self.congruence_violations} "
                     f"closed under group={self.closed_under_group}")
        for f in self.failures:
            lines.append(f"FAIL: {f}")
        lines.append("certified" if self.ok else "NOT certified")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "enumeration": self.enumeration.summary(),
            "dims": self.dim_report.to_json(),
            "dimension": self.dimension,
            "vanishing_sizes": sorted(self.vanishing.vanishing_sizes) if self.vanishing else None,
            "realized_T": list(self.realized.T) if self.realized else None,
            "congruence_violations": self.congruence_violations,
            "closed_under_group": self.closed_under_group,
            "failures": self.failures,
            "ok": self.ok,
        }


def symmetry_generators(params: OAParams) -> list:
    if params.n == 2 and params.s % 2 == 0:
        return god_generators(params.k)
    return giso_generators(params.k, params.n)


def certify(params: OAParams, budget_nodes: int = DEFAULT_NODES,
            budget_seconds: float = DEFAULT_SECONDS, workers: int = 1) -> CertifyReport:
    """Enumerate, measure, and check the measured dimension against the admissible lattice."""
    enum = enumerate_all(params, budget_nodes, budget_seconds, workers=workers)
    report = CertifyReport(params, enum, candidate_dims(params))
    if not enum.complete:
        report.failures.append("enumeration budget exhausted")
        return report
    sols = enum.solutions
    if not sols:
        report.failures.append("no OA exists for these parameters; nothing to certify")
        return report
    dim = affine_dimension(sols).dimension
    report.dimension = dim
    if dim not in report.dim_report.dimensions:
        report.failures.append(f"dimension {dim} not among candidates {report.dim_report.dimensions}")
    van = vanishing_blocks(sols, report.dim_report.mode)
    report.vanishing = van
    if not van.structured:
        report.failures.append(f"vanishing blocks are not whole classes: {van.sizes()}")
    beyond = {r for r in van.vanishing_sizes if r > params.s}
    match = [c for c in report.dim_report.candidates if set(c.forced_block_sizes) == beyond]
    if not match:
        report.failures.append(f"vanishing sizes {sorted(beyond)} match no T in Omega")
    else:
        report.realized = match[0]
        if match[0].dimension != dim:
            report.failures.append(f"T={list(match[0].T)} predicts {match[0].dimension}, measured {dim}")
    bad = 0
    for fv in sols:
        jv = anova_transform(fv)
        if not check_strength_J(jv, params.s):
            report.failures.append("J criterion disagrees with direct strength check")
            break
        bad += len(congruence_report(jv, params.s, params.lam).violations)
    report.congruence_violations = bad
    if bad:
        report.failures.append(f"{bad} congruence violations")
    solset = {fv.counts for fv in sols}
    for g in symmetry_generators(params):
        p = as_perm(g)
        if any(act_on_counts(p, c) not in solset for c in solset):
            report.closed_under_group = False
            report.failures.append("solution set not closed under the symmetry generators")
            break
    return report
