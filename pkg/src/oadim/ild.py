"""The two equality descriptions of the OA existence problem and their file output.

``marginal``: one row per s-subset of columns and s-tuple of symbols, the
margin count equals lambda. ``J``: J_empty = lambda n^s and J_u = 0 for
1 <= |u| <= s. Both carry bounds 0 <= x <= p_max and integrality.

lp-text layout (one item per line, deterministic)::

    \\ <title>
    subject to
     c0: +1 x_0 +1 x_3 = 1  \\ M_0@0
    bounds
     0 <= x_0 <= 1
    general
     x_0 x_1 ...
    end
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arrays import OAParams, ParameterError, all_tuples
from .dims import ConstraintRow, block_rows
from .linalg import Echelon

Row = tuple[tuple[int, int], ...]


@dataclass
class LinearSystem:
    n_vars: int
    rows: list[Row] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    lower: list[int] = field(default_factory=list)
    upper: list[int] = field(default_factory=list)
    integer: list[bool] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    title: str = ""

    def add_row(self, coeffs: Row, rhs, label: str = ""):
        self.rows.append(tuple(coeffs))
        self.rhs.append(Fraction(rhs))
        self.labels.append(label)

    def matrix(self) -> np.ndarray:
        A = np.zeros((len(self.rows), self.n_vars), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j, c in row:
                A[i, j] = c
        return A

    def augmented_rows(self):
        """Dense rows with the right-hand side appended, scaled to integers."""
        for row, b in zip(self.rows, self.rhs):
            v = [0] * (self.n_vars + 1)
            for j, c in row:
                v[j] = c * b.denominator
            v[-1] = b.numerator
            yield v

    def rank(self) -> int:
        ech = Echelon(self.n_vars)
        for row in self.matrix():
            ech.add(row)
        return ech.rank

    def satisfied_by(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64)
        return all(sum(c * int(x[j]) for j, c in row) == b for row, b in zip(self.rows, self.rhs))

    def extended(self, extra: list[ConstraintRow]) -> "LinearSystem":
        out = LinearSystem(self.n_vars, list(self.rows), list(self.rhs), list(self.lower),
                           list(self.upper), list(self.integer), list(self.labels), self.title)
        for r in extra:
            out.add_row(r.coeffs, 0, _j_label(r.u, r.digits))
        return out


def _j_label(u, digits) -> str:
    if not u:
        return "J_empty"
    return "J_" + "_".join(map(str, u)) + "@" + "".join(map(str, digits))


def _bounded(params: OAParams, title: str) -> LinearSystem:
    m = params.size
    return LinearSystem(m, lower=[0] * m, upper=[params.p_max] * m, integer=[True] * m, title=title)


def build_ild_marginal(params: OAParams) -> LinearSystem:
    n, k, s = params.n, params.k, params.s
    sys = _bounded(params, f"OA marginal form n={n} k={k} s={s} lambda={params.lam}")
    t = all_tuples(n, k)
    for cols in itertools.combinations(range(k), s):
        sub = t[:, list(cols)]
        for sym in itertools.product(range(n), repeat=s):
            idx = np.flatnonzero((sub == sym).all(axis=1)) if s else np.arange(params.size)
            label = "M_" + "_".join(map(str, cols)) + "@" + "".join(map(str, sym)) if s else "M_total"
            sys.add_row(tuple((int(j), 1) for j in idx), params.lam, label)
    return sys


def build_ild_J(params: OAParams) -> LinearSystem:
    n, k, s = params.n, params.k, params.s
    sys = _bounded(params, f"OA J form n={n} k={k} s={s} lambda={params.lam}")
    sys.add_row(tuple((j, 1) for j in range(params.size)), params.lam * n**s, "J_empty")
    for r in block_rows(n, k, range(1, s + 1)):
        sys.add_row(r.coeffs, 0, _j_label(r.u, r.digits))
    return sys


def check_equivalence(a: LinearSystem, b: LinearSystem) -> bool:
    """Same affine solution set: rank(A) = rank(B) = rank of both stacked with rhs."""
    if a.n_vars != b.n_vars:
        raise ParameterError("systems have different variable counts")
    ra, rb = a.rank(), b.rank()
    if ra != rb:
        return False
    ech = Echelon(a.n_vars + 1)
    for v in itertools.chain(a.augmented_rows(), b.augmented_rows()):
        ech.add(v)
    return ech.rank == ra


def _term(c: int, j: int) -> str:
    return f"{'+' if c >= 0 else '-'}{abs(c)} x_{j}"


def to_lp_text(sys: LinearSystem) -> str:
    lines = [f"\\ {sys.title}" if sys.title else "\\ linear system", "subject to"]
    for i, (row, b) in enumerate(zip(sys.rows, sys.rhs)):
        lhs = " ".join(_term(c, j) for j, c in row) or "0 x_0"
        note = f"  \\ {sys.labels[i]}" if sys.labels[i] else ""
        lines.append(f" c{i}: {lhs} = {b}{note}")
    lines.append("bounds")
    for j in range(sys.n_vars):
        lines.append(f" {sys.lower[j]} <= x_{j} <= {sys.upper[j]}")
    ints = [f"x_{j}" for j in range(sys.n_vars) if sys.integer[j]]
    if ints:
        lines.append("general")
        for i in range(0, len(ints), 10):
            lines.append(" " + " ".join(ints[i:i + 10]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def to_json_text(sys: LinearSystem) -> str:
    obj = {
        "title": sys.title,
        "n_vars": sys.n_vars,
        "rows": [{"label": lab, "coeffs": [list(rc) for rc in row], "rhs": str(b)}
                 for row, b, lab in zip(sys.rows, sys.rhs, sys.labels)],
        "lower": [str(Fraction(v)) for v in sys.lower],
        "upper": [str(Fraction(v)) for v in sys.upper],
        "integer": sys.integer,
    }
    return json.dumps(obj, indent=1) + "\n"


def from_json_text(text: str) -> LinearSystem:
    obj = json.loads(text)
    sys = LinearSystem(obj["n_vars"], lower=[int(Fraction(v)) for v in obj["lower"]],
                       upper=[int(Fraction(v)) for v in obj["upper"]], integer=list(obj["integer"]),
                       title=obj.get("title", ""))
    for r in obj["rows"]:
        sys.add_row(tuple((int(j), int(c)) for j, c in r["coeffs"]), Fraction(r["rhs"]), r.get("label", ""))
    return sys


FORMATS = {"lp-text": to_lp_text, "json": to_json_text}


def emit(sys: LinearSystem, extra: list[ConstraintRow] | None = None, fmt: str = "lp-text") -> str:
    if fmt not in FORMATS:
        raise ParameterError(f"unsupported format {fmt!r}; choose from {sorted(FORMATS)}")
    return FORMATS[fmt](sys.extended(extra or []))
