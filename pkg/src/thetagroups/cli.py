"""Command-line entry point: ``thetagroups <command> [options]``.

Exit status is 0 when every check run by the command passes, 1 when a check
fails, and 2 for unusable input (bad JSON, invalid forms, excluded levels).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from dataclasses import dataclass, field

from . import adelic, reps, skew, suites, theta
from .abelian import FinAbGroup
from .errors import SizeError, ThetaError

DEFAULT_GROUP_CAP = 4096
DEFAULT_DIM_CAP = 64
DEFAULT_LEVEL_BOUND = 48


class InputError(Exception):
    """Input that cannot be used; reported with exit status 2."""


@dataclass
class Report:
    command: str
    summary: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = ""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return {"command": self.command, "passed": self.passed, "summary": self.summary,
                "rows": self.rows, "checks": self.checks}


# -- rendering ---------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_cell(x) for x in v) + ")"
    return str(v)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        if report.rows:
            cols = list(report.rows[0])
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in report.rows:
                w.writerow([_cell(r.get(c, "")) for c in cols])
            buf.write("\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "detail"])
        for c in report.checks:
            w.writerow([c["name"], "PASS" if c["passed"] else "FAIL", c["detail"]])
        return buf.getvalue().rstrip("\n")
    lines = [f"# {report.command}", ""]
    for k, v in report.summary.items():
        lines.append(f"- **{k}**: {_cell(v)}")
    if report.rows:
        cols = list(report.rows[0])
        lines += ["", "| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        for r in report.rows:
            lines.append("| " + " | ".join(_cell(r.get(c, "")) for c in cols) + " |")
    if report.checks:
        lines += ["", "| check | result | detail |", "|---|---|---|"]
        for c in report.checks:
            lines.append(f"| {c['name']} | {'PASS' if c['passed'] else 'FAIL'} | {c['detail']} |")
    lines += ["", f"status: {'OK' if report.passed else 'FAILED'}"]
    return "\n".join(lines)


# -- parsing helpers -------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _vector(text: str) -> list:
    try:
        return [Fraction(t) for t in text.replace(" ", "").split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"expected comma-separated rationals, got {text!r}") from exc


def _gens(text: str) -> list:
    """'1,0;0,2' -> [(1, 0), (0, 2)]."""
    return [tuple(_int_list(part)) for part in text.split(";") if part.strip()]


def _group_cap(args) -> int:
    if getattr(args, "size_cap", None):
        return args.size_cap
    env = os.environ.get("THETA_SIZE_CAP")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"THETA_SIZE_CAP must be an integer, got {env!r}") from exc
    return DEFAULT_GROUP_CAP


def _type_arg(text: str) -> tuple:
    t = tuple(_int_list(text))
    try:
        FinAbGroup(t)
    except ThetaError as exc:
        raise InputError(str(exc)) from exc
    if not t:
        raise InputError("type must be nonempty")
    return t


# -- commands ------------------------------------------------------------------------


def cmd_decompose(args) -> Report:
    form = skew.SkewForm.from_json(_load_json(args.form))
    rep = Report("decompose")
    rad = skew.radical(form)
    rep.summary["group"] = list(form.base.divisors)
    rep.summary["radical order"] = len(rad)
    if len(rad) > 1 and not args.quotient_radical:
        rep.summary["status"] = "degenerate"
        whole = len(rad) == form.base.order
        rep.summary["radical"] = "whole group" if whole else [list(r) for r in rad]
        rep.check("radical computed", len(rad) == len(skew.radical_by_enumeration(form)),
                  f"degenerate; radical = {'whole group' if whole else len(rad)}")
        return rep
    dec = skew.symplectic_decompose(form, quotient_radical=args.quotient_radical)
    rep.summary["type"] = list(dec.type)
    rep.summary["status"] = "nondegenerate" if len(rad) == 1 else "decomposed modulo the radical"
    for i, (x, y) in enumerate(zip(dec.k1_gens, dec.k2_gens)):
        rep.rows.append({"i": i, "x_i": list(x), "y_i": list(y), "order": dec.type[i],
                         "pairing": str(dec.form.eval(x, y))})
    try:
        dec.verify()
        ok = True
    except AssertionError:
        ok = False
    rep.check("decomposition invariants", ok, f"|K| = {dec.base.order} = (prod type)^2")
    if dec.base.order <= _group_cap(args):
        rep.check("reconstruction", skew.reconstruction_check(dec), "form rebuilt on every pair")
    return rep


def cmd_irreps(args) -> Report:
    t = _type_arg(args.type)
    order = FinAbGroup(t).order ** 2
    cap = _group_cap(args)
    if order > cap:
        raise SizeError(f"|K| = {order} exceeds the size cap {cap}")
    count, dim = reps.count_irreps(t, args.weight)
    if dim > args.dim_cap:
        raise InputError(f"dimension {dim} exceeds the cap {args.dim_cap}")
    c = reps.classify_irreps(t, args.weight)
    rep = Report("irreps")
    rep.summary.update({"type": list(t), "weight": args.weight, "classes": len(c.classes), "dimension": dim,
                        "formula": f"prod gcd({args.weight}, d_i)^2 = {count}, D_n = {dim}"})
    for W in c.classes:
        rep.rows.append({"y": list(W.y), "chi": list(W.chi.coeffs), "dim": W.dim})
    rep.check("class count", len(c.classes) == count, f"{len(c.classes)} pairwise non-isomorphic of {c.labels_tested}")
    rep.check("dimension", c.dims == {dim}, f"all classes have dimension {dim}")
    return rep


def cmd_verify(args) -> Report:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    limits = suites.Limits(group_cap=_group_cap(args), dim_cap=args.dim_cap,
                           level_bound=args.level_bound, cases=args.cases)
    rep = Report("verify")
    rep.summary["suites"] = names
    rep.summary["seed"] = args.seed
    for name in names:
        res = suites.run_suite(name, args.seed, limits)
        for c in res.checks:
            detail = c.detail if c.passed else f"{c.detail}; counterexample: {c.counterexample!r}"
            rep.check(f"{name}: {c.name}", c.passed, detail)
    return rep


def cmd_pairing(args) -> Report:
    E = adelic.NSForm.from_json(_load_json(args.ns))
    x = adelic.AdelePoint(_vector(args.x))
    y = adelic.AdelePoint(_vector(args.y))
    for p in (x, y):
        if len(p.v) != E.size:
            raise InputError(f"points need {E.size} coordinates")
    pv = adelic.adelic_pairing_levels(E, x, y)
    rep = Report("pairing")
    text = str(pv.value) if not pv.value else f"{pv.value} (levels {pv.levels[0]},{pv.levels[1]})"
    rep.summary.update({"value": str(pv.value), "levels": list(pv.levels), "result": text})
    rep.check("two-level agreement", True, f"levels {pv.levels} agree with E(v, w) mod 1")
    return rep


def cmd_induce(args) -> Report:
    t = _type_arg(args.type)
    y = tuple(_int_list(args.y)) if args.y else (0,) * len(t)
    chi = tuple(_int_list(args.chi)) if args.chi else None
    count, dim = reps.count_irreps(t, args.weight)
    if dim > args.dim_cap:
        raise InputError(f"dimension {dim} exceeds the cap {args.dim_cap}")
    ind = reps.induce_with_intertwiner(t, args.weight, y, chi)
    rep = Report("induce")
    rep.summary.update({"type": list(t), "weight": args.weight, "y": list(y),
                        "chi": list(ind.irrep.chi.coeffs), "dimension": ind.rep.dim})
    rep.check("dimension", ind.rep.dim == dim, f"D_n = {dim}")
    rep.check("intertwiner", True, f"verified on all {reps.GPrime(ind.irrep.heis).order} elements of G'")
    rep.check("irreducible", reps.is_irreducible(ind.rep), "character norm 1 over G'")
    if args.emit_rep:
        rep.summary["representation"] = ind.rep.to_json()
    return rep


def cmd_descend(args) -> Report:
    if args.cocycle:
        G = theta.ThetaGroup(theta.Cocycle.from_json(_load_json(args.cocycle)))
    elif args.type:
        G = theta.heisenberg_of_type(_type_arg(args.type))
    else:
        raise InputError("give --cocycle FILE or --type")
    if G.base.order > _group_cap(args):
        raise SizeError(f"|K| = {G.base.order} exceeds the size cap {_group_cap(args)}")
    gens = _gens(args.subgroup) if args.subgroup else []
    L = theta.lift_level_subgroup(G, gens)
    D = theta.descent(G, L)
    Q = D.group
    qform = theta.commutator_form(Q)
    nondeg = skew.is_nondegenerate(qform)
    rep = Report("descend")
    rep.summary.update({"base": list(G.base.divisors), "level subgroup order": len(L.subgroup),
                        "quotient": list(Q.base.divisors),
                        "quotient type": list(skew.form_type(qform)) if nondeg else "degenerate"})
    for u in L.subgroup:
        a, x = L.section[u]
        rep.rows.append({"element": list(u), "section": f"({a}, {list(x)})"})
    rep.check("order law", Q.base.order * len(L.subgroup) ** 2 == G.base.order,
              f"{Q.base.order} * {len(L.subgroup)}^2 = {G.base.order}")
    rep.check("nondegenerate quotient", nondeg, "radical of the descended commutator form is trivial")
    return rep


COMMANDS = {
    "decompose": cmd_decompose,
    "irreps": cmd_irreps,
    "verify": cmd_verify,
    "pairing": cmd_pairing,
    "induce": cmd_induce,
    "descend": cmd_descend,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "markdown", "csv"], default="markdown")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--size-cap", type=int, default=None, help="largest |K| to enumerate (env THETA_SIZE_CAP)")
    common.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP)
    common.add_argument("--level-bound", type=int, default=DEFAULT_LEVEL_BOUND)

    parser = argparse.ArgumentParser(prog="thetagroups", description="Exact theta-group computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="symplectic decomposition of a skew form")
    p.add_argument("form", help="form JSON file")
    p.add_argument("--quotient-radical", action="store_true", help="decompose K/K0 for degenerate forms")

    p = sub.add_parser("irreps", parents=[common], help="classes of irreducible weight-n modules")
    p.add_argument("--type", required=True, help="divisor chain, e.g. 2,4")
    p.add_argument("--weight", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES) + ["all"])
    p.add_argument("--cases", type=int, default=0, help="override randomized case counts")

    p = sub.add_parser("pairing", parents=[common], help="adelic commutator pairing")
    p.add_argument("--ns", required=True, help="NS form JSON file")
    p.add_argument("--x", required=True, help="rational vector, e.g. 1/2,0")
    p.add_argument("--y", required=True)

    p = sub.add_parser("induce", parents=[common], help="induced module with verified intertwiner")
    p.add_argument("--type", required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--y", default=None, help="label y in K2")
    p.add_argument("--chi", default=None, help="coefficients of the kernel character")
    p.add_argument("--emit-rep", action="store_true", help="include the generator matrices")

    p = sub.add_parser("descend", parents=[common], help="quotient by a level subgroup")
    p.add_argument("--cocycle", default=None, help="cocycle JSON file")
    p.add_argument("--type", default=None, help="use the standard group of this type")
    p.add_argument("--subgroup", default="", help="generators, e.g. '2,0;0,0'")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (InputError, ThetaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(report, args.format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
