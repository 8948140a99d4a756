"""Command-line entry point: ``python -m oadim <command> ...``.

Exit codes: 0 success, 1 failed verification or certification, 2 usage
error, 3 search budget exhausted. Every command writes deterministic bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .anova import PreconditionError, UnsupportedAlphabet, anova_transform, congruence_report, signed_j_transform
from .arrays import OAParams, ParameterError, counts_vector, first_strength_violation, read_array, read_frequency
from .dims import candidate_dims, constraint_family
from .groups import (ResourceError, burnside_orbit_count, giso_generators, god_generators, group_order,
                     read_generators)
from .ild import FORMATS, build_ild_J, build_ild_marginal, emit
from .oracle import DEFAULT_NODES, DEFAULT_SECONDS, certify, enumerate_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _params(a) -> OAParams:
    for name in ("n", "k", "s"):
        if getattr(a, name) is None:
            raise UsageError(f"--{name} is required")
    return OAParams(a.n, a.k, a.s, a.lam, a.pmax)


def _T(a) -> tuple[int, ...]:
    if not a.T:
        return ()
    try:
        return tuple(int(v) for v in a.T.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"--T expects a comma list of integers, got {a.T!r}")


def _load_point(path: str):
    """An array file or a frequency-vector JSON file."""
    if path.endswith(".json"):
        return read_frequency(path)
    return counts_vector(read_array(path))


def cmd_transform(a) -> int:
    fv = _load_point(a.input)
    obj = {"n": fv.params.n, "k": fv.params.k, "N": fv.total, "J": anova_transform(fv).to_json()}
    if fv.params.n == 2:
        obj["signed_J"] = signed_j_transform(fv).to_json()
    _write(_dump(obj), a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    if a.s is None:
        raise UsageError("--s is required")
    fv = _load_point(a.input)
    viol = first_strength_violation(fv, a.s)
    lines = [f"n={fv.params.n} k={fv.params.k} N={fv.total} s={a.s}"]
    if viol is not None:
        cols, sym, count, expected = viol
        if expected is None:
            lines.append(f"NOT strength {a.s}: N={count} is not a multiple of n^s")
        else:
            lines.append(f"NOT strength {a.s}: margin on columns {list(cols)} symbol {list(sym)} "
                         f"has count {count}, expected {expected}")
        _write("\n".join(lines) + "\n", a.out)
        return EXIT_FAIL
    lines.append(f"strength {a.s}: ok")
    rep = congruence_report(anova_transform(fv), a.s)
    lines.append(f"congruence entries={len(rep.entries)} violations={len(rep.violations)}")
    for e in rep.violations[:10]:
        lines.append(f"  u={list(e.u)} digits={list(e.digits)} mu={e.mu} expected residue {e.expected}")
    _write("\n".join(lines) + "\n", a.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dims(a) -> int:
    rep = candidate_dims(_params(a), a.mode)
    if a.format == "json":
        _write(_dump(rep.to_json()), a.out)
    else:
        p = rep.params
        lines = [f"n={p.n} k={p.k} s={p.s} lambda={p.lam} mode={rep.mode}",
                 f"base dimension={rep.base_dim}", f"omega={list(rep.omega.members)}"]
        for c in rep.candidates:
            lines.append(f"T={list(c.T)} forced sizes={list(c.forced_block_sizes)} dim={c.dimension}")
        lines.append("dimensions=" + ", ".join(map(str, rep.dimensions)))
        _write("\n".join(lines) + "\n", a.out)
    return EXIT_OK


def cmd_constraints(a) -> int:
    p = _params(a)
    rows = constraint_family(p, _T(a), a.mode)
    if a.format == "json":
        _write(_dump([r.to_json() for r in rows]), a.out)
    else:
        base = build_ild_marginal(p) if a.form == "marginal" else build_ild_J(p)
        _write(emit(base, rows, "lp-text"), a.out)
    return EXIT_OK


def cmd_emit(a) -> int:
    p = _params(a)
    base = build_ild_marginal(p) if a.form == "marginal" else build_ild_J(p)
    extra = constraint_family(p, _T(a), a.mode) if a.T else []
    _write(emit(base, extra, a.format), a.out)
    return EXIT_OK


def _order(p: OAParams, seed):
    if seed is None:
        return None
    order = list(range(p.size))
    random.Random(seed).shuffle(order)
    return order


def cmd_enumerate(a) -> int:
    p = _params(a)
    res = enumerate_all(p, a.budget_nodes, a.budget_seconds, order=_order(p, a.seed), workers=a.workers)
    # timing is left out of the file so repeated runs are byte-identical
    summary = res.summary()
    summary.pop("seconds")
    lines = [json.dumps(fv.to_json()) for fv in res.solutions] + [json.dumps({"summary": summary})]
    _write("\n".join(lines) + "\n", a.out)
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_certify(a) -> int:
    p = _params(a)
    rep = certify(p, a.budget_nodes, a.budget_seconds, workers=a.workers)
    if a.format == "json":
        obj = rep.to_json()
        obj["enumeration"].pop("seconds")
        _write(_dump(obj), a.out)
    else:
        _write(rep.describe() + "\n", a.out)
    if not rep.enumeration.complete:
        return EXIT_BUDGET
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_orbits(a) -> int:
    if a.k is None:
        raise UsageError("--k is required")
    n = a.n or 2
    if a.generators:
        gens = read_generators(a.generators, a.k, n)
        label = a.generators
    elif a.group == "od":
        if n != 2:
            raise UsageError("the od group needs n = 2")
        gens, label = god_generators(a.k), f"G_OD(k={a.k})"
    else:
        gens, label = giso_generators(a.k, n), f"G_iso(k={a.k}, n={n})"
    size = n**a.k
    lines = [f"group {label}", f"points={size} order={group_order(gens, a.cap)}"]
    for m in range(1, a.max_power + 1):
        lines.append(f"orbits on X^{m}: {burnside_orbit_count(gens, m, a.cap, size)}")
    _write("\n".join(lines) + "\n", a.out)
    return EXIT_OK


COMMANDS = {
    "transform": cmd_transform, "verify": cmd_verify, "dims": cmd_dims,
    "constraints": cmd_constraints, "emit": cmd_emit, "enumerate": cmd_enumerate,
    "certify": cmd_certify, "orbits": cmd_orbits,
}


def _add_params(sp, T: bool = False, mode: bool = False):
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    sp.add_argument("--pmax", type=int, default=None)
    if T:
        sp.add_argument("--T", default="", help="comma list of offsets from Omega")
    if mode:
        sp.add_argument("--mode", choices=["general", "n2-even-s"], default=None)


def _add_budget(sp):
    sp.add_argument("--budget-nodes", type=int, default=DEFAULT_NODES)
    sp.add_argument("--budget-seconds", type=float, default=DEFAULT_SECONDS)
    sp.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oadim", description="J-characteristics and OA polytope dimensions")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("transform", help="array or frequency JSON -> J-vector JSON")
    sp.add_argument("input")
    sp.add_argument("--out")

    sp = sub.add_parser("verify", help="strength verdict and congruence report")
    sp.add_argument("input")
    sp.add_argument("--s", type=int)
    sp.add_argument("--out")

    sp = sub.add_parser("dims", help="admissible dimensions of the integer hull")
    _add_params(sp, mode=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out")

    sp = sub.add_parser("constraints", help="zero right-hand-side family for a chosen T")
    _add_params(sp, T=True, mode=True)
    sp.add_argument("--format", choices=["json", "lp-text"], default="json")
    sp.add_argument("--form", choices=["marginal", "J"], default="J")
    sp.add_argument("--out")

    sp = sub.add_parser("emit", help="ILD file with optional families appended")
    _add_params(sp, T=True, mode=True)
    sp.add_argument("--format", choices=sorted(FORMATS), default="lp-text")
    sp.add_argument("--form", choices=["marginal", "J"], default="marginal")
    sp.add_argument("--out")

    sp = sub.add_parser("enumerate", help="all frequency vectors as JSON lines")
    _add_params(sp)
    _add_budget(sp)
    sp.add_argument("--seed", type=int, default=None, help="shuffle the variable order with this seed")
    sp.add_argument("--out")

    sp = sub.add_parser("certify", help="enumerate, measure and check against the candidates")
    _add_params(sp)
    _add_budget(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out")

    sp = sub.add_parser("orbits", help="group order and Burnside orbit counts")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--group", choices=["iso", "od"], default="iso")
    sp.add_argument("--generators", help="JSON generator file instead of a named group")
    sp.add_argument("--max-power", type=int, default=2)
    sp.add_argument("--cap", type=int, default=10**7)
    sp.add_argument("--out")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[a.command](a)
    except (UsageError, ParameterError, UnsupportedAlphabet, PreconditionError, FileNotFoundError) as e:
        print(f"oadim {a.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as e:
        print(f"oadim {a.command}: {e}", file=sys.stderr)
        return EXIT_BUDGET


def main():
    sys.exit(run())
