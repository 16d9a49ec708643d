"""Command-line interface: ``cwcalc {group,table,basis,check,eval}``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..basering import WittModel
from ..checks import SUITES, run_suite
from ..chow import chow_basis
from ..chowwitt import cw_generators, cw_group
from ..icohomology import free_basis, icoh_group, torsion_basis, witt_group, witt_table
from ..polynomial import bslnc_table
from ..reports import GroupReport
from ..steenrod import Twist
from .evaluate import THEORIES, EvalConfig, components, eval_expr, format_value


class UsageError(ValueError):
    pass


def _model(name: str) -> WittModel:
    try:
        return WittModel.from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _twist(args) -> Twist | None:
    if args.theory in ("chow", "ch"):
        if args.twist not in (None, "O"):
            raise UsageError(f"theory {args.theory} has no twist")
        return None
    return Twist.parse(args.twist or "O")


def group_report(theory: str, n: int, q: int, twist: Twist | None, model: WittModel, mode: str = "symbolic") -> GroupReport:
    if n < 1 or q < 0:
        raise UsageError("need n >= 1 and degree >= 0")
    if mode != "symbolic" and theory != "chw":
        raise UsageError("--mode instantiated applies to --theory chw only")
    if theory in ("chow", "ch"):
        basis = chow_basis(n, q)
        report = GroupReport(theory, n, q, None, model.kind)
        if theory == "chow":
            report.z_rank = len(basis)
        else:
            report.torsion_rank = len(basis)
        report.basis = [bslnc_table(n).format_monomial(m) for m in basis]
        return report
    if theory == "witt":
        report = witt_group(n, q, twist, model.kind)
        return report
    if theory == "icoh":
        return icoh_group(n, q, twist, model)
    return cw_group(n, q, twist, mode, None if mode == "symbolic" and model.kind == "symbolic" else model)


def basis_lines(theory: str, n: int, q: int, twist: Twist | None, model: WittModel) -> list[str]:
    if theory == "icoh":
        lines = [witt_table(n).format_monomial(m) for m in (free_basis(n, q) if twist is Twist.O else [])]
        tb = torsion_basis(n, q, twist)
        if tb.names_complete:
            lines += [f"{name}  rho = {form}" for name, form in zip(tb.names, tb.named_forms)]
        else:
            lines += [f"{label}  rho = {form}" for label, form in zip(tb.labels(), tb.forms)]
        return lines
    if theory == "chw":
        real = model if model.has_elements else WittModel("real")
        return [str(g) for g in cw_generators(n, q, twist, real)]
    return group_report(theory, n, q, twist, model).basis


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, ensure_ascii=False))
    else:
        print(text)


def cmd_group(args) -> int:
    if args.degree is None:
        raise UsageError("group needs -q/--degree")
    r = group_report(args.theory, args.n, args.degree, _twist(args), _model(args.field), args.mode)
    _emit(args, r.to_text(), r.to_dict())
    return 0


def cmd_table(args) -> int:
    qmax = args.qmax if args.qmax is not None else args.degree
    if qmax is None:
        raise UsageError("table needs --qmax")
    twist, model = _twist(args), _model(args.field)
    reports = [group_report(args.theory, args.n, q, twist, model, args.mode) for q in range(qmax + 1)]
    text = "\n".join(f"q={r.degree}: {r.summary()}" for r in reports)
    _emit(args, text, [r.to_dict() for r in reports])
    return 0


def cmd_basis(args) -> int:
    if args.degree is None:
        raise UsageError("basis needs -q/--degree")
    twist, model = _twist(args), _model(args.field)
    lines = basis_lines(args.theory, args.n, args.degree, twist, model)
    data = {"theory": args.theory, "n": args.n, "degree": args.degree, "twist": None if twist is None else str(twist), "basis": lines}
    _emit(args, "\n".join(lines) if lines else "(empty)", data)
    return 0


def cmd_check(args) -> int:
    suite = args.suite or "all"
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(suite, n_max=args.n, q_max=args.qmax)
    data = [{"suite": r.name, "ok": r.ok, "cases": r.cases, "counterexample": r.counterexample} for r in results]
    _emit(args, "\n".join(r.line() for r in results), data)
    return 0 if all(r.ok for r in results) else 1


def cmd_eval(args) -> int:
    cfg = EvalConfig(args.n, args.theory, _model(args.field))
    value = eval_expr(args.expr, cfg)
    comps = components(value)
    lines = [format_value(value)]
    for d, tw, _ in comps:
        lines.append(f"  degree {d}" + ("" if tw is None else f" twist {tw}"))
    data = {
        "theory": args.theory,
        "n": args.n,
        "field": cfg.model.kind,
        "value": format_value(value),
        "components": [{"degree": d, "twist": None if tw is None else str(tw), "value": str(x)} for d, tw, x in comps],
    }
    _emit(args, "\n".join(lines), data)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=THEORIES, default="icoh")
    common.add_argument("--n", type=int)
    common.add_argument("-q", "--degree", type=int)
    common.add_argument("--qmax", type=int)
    common.add_argument("--twist", choices=("O", "T"))
    common.add_argument("--field", choices=("real", "quadclosed", "symbolic"), default="symbolic")
    common.add_argument("--mode", choices=("symbolic", "instantiated"), default="symbolic")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--suite")

    parser = _Parser(prog="cwcalc", description="Chow-Witt and I-cohomology calculator for BSL_n^c.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("group", parents=[common], help="additive structure in one degree").set_defaults(func=cmd_group)
    sub.add_parser("table", parents=[common], help="sweep degrees 0..qmax").set_defaults(func=cmd_table)
    sub.add_parser("basis", parents=[common], help="list a basis with names").set_defaults(func=cmd_basis)
    sub.add_parser("check", parents=[common], help="run an oracle suite").set_defaults(func=cmd_check)
    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    ev.add_argument("expr")
    ev.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "check" and args.n is None:
        parser.error("--n is required")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"cwcalc: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
