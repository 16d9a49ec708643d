"""Evaluate parsed expressions in one of the five theories.

A value is a dict from (degree, twist) to an element; sums of different
degrees or twists stay separate components.  Chow and mod-2 Chow values use
twist ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..basering import REAL, WittModel
from ..chow import InputError, chern, mod2_reduce
from ..chowwitt import (
    bockstein_class,
    euler_class,
    hyperbolic,
    make_class,
    pontryagin_chow_part,
    pontryagin_class,
    zero_one_lift,
)
from ..icohomology import ICohClass, bockstein
from ..polynomial import GradedPolynomial, bslnc_table
from ..steenrod import Twist, sq2
from .parser import Call, Int, Name, Node, Power, Product, Sum, parse_expr

THEORIES = ("chow", "ch", "witt", "icoh", "chw")

Key = tuple[int, "Twist | None"]
Value = dict[Key, object]


@dataclass(frozen=True)
class EvalConfig:
    n: int
    theory: str = "icoh"
    model: WittModel = REAL

    def __post_init__(self) -> None:
        if self.theory not in THEORIES:
            raise InputError(f"unknown theory {self.theory!r}")
        if self.n < 1:
            raise InputError("n must be >= 1")

    def with_theory(self, theory: str) -> "EvalConfig":
        return EvalConfig(self.n, theory, self.model)


def _is_zero(x) -> bool:
    if isinstance(x, GradedPolynomial):
        return not x
    return x.is_zero()


def _clean(v: Value) -> Value:
    return {k: x for k, x in v.items() if not _is_zero(x)}


def _add(a: Value, b: Value) -> Value:
    out = dict(a)
    for k, x in b.items():
        out[k] = out[k] + x if k in out else x
    return _clean(out)


def _neg(a: Value) -> Value:
    return {k: -x for k, x in a.items()}


def _mul(a: Value, b: Value) -> Value:
    out: Value = {}
    for (da, ta), x in a.items():
        for (db, tb), y in b.items():
            key = (da + db, None if ta is None else ta + tb)
            p = x * y
            out[key] = out[key] + p if key in out else p
    return _clean(out)


def _one(cfg: EvalConfig) -> Value:
    return _int(cfg, 1)


def _int(cfg: EvalConfig, k: int) -> Value:
    n, table = cfg.n, bslnc_table(cfg.n)
    if cfg.theory == "chow":
        x = GradedPolynomial.const(table, k)
    elif cfg.theory == "ch":
        x = GradedPolynomial.const(table, k, "F2")
    elif cfg.theory in ("witt", "icoh"):
        x = ICohClass.scalar(n, k, cfg.model)
    else:
        x = make_class(ICohClass.scalar(n, k, cfg.model), GradedPolynomial.const(table, k))
    tw = None if cfg.theory in ("chow", "ch") else Twist.O
    return _clean({(0, tw): x})


def _name(cfg: EvalConfig, name: str) -> Value:
    n, theory = cfg.n, cfg.theory
    ring = "F2" if theory == "ch" else "Z"
    k = 0 if name == "th" else int(name[1:])
    if theory in ("chow", "ch"):
        if name == "th":
            x = GradedPolynomial.gen(bslnc_table(n), "th", ring)
        elif name[0] == "c":
            x = chern(n, k, ring)
        elif name[0] == "p":
            x = pontryagin_chow_part(n, k // 2)
            x = mod2_reduce(x) if ring == "F2" else x
        else:
            x = chern(n, n, ring)
        return _clean({(x.degree() if x else 0, None): x})
    if name == "th" or name[0] == "c":
        raise InputError(f"{name} is a Chow generator; in {theory} use it inside b(), bT() or H()")
    if theory in ("witt", "icoh"):
        if theory == "witt" and name[0] == "e" and n % 2:
            raise InputError(f"e{n} is torsion for odd n and vanishes in Witt-sheaf cohomology")
        x = ICohClass.free_generator(n, name, cfg.model)
    elif name[0] == "p":
        x = pontryagin_class(n, k // 2, cfg.model)
    elif n % 2 == 0:
        x = euler_class(n, cfg.model)
    else:
        x = bockstein_class(n, Twist.O, ((n - 1) // 2,), cfg.model)
    degree = x.q if isinstance(x, ICohClass) else x.degree
    return {(degree, x.twist): x}


def _call(cfg: EvalConfig, fn: str, arg: Node) -> Value:
    n, theory = cfg.n, cfg.theory
    if fn in ("H", "HT"):
        if theory != "chw":
            raise InputError(f"{fn}(...) is a Chow-Witt class; use --theory chw")
        inner = evaluate(arg, cfg.with_theory("chow"))
        tw = Twist.T if fn == "HT" else Twist.O
        return _clean({(d, tw): hyperbolic(x, tw, cfg.model, degree=d) for (d, _), x in inner.items()})
    tw = Twist.T if fn == "bT" else Twist.O
    if theory == "chow":
        raise InputError("Bockstein classes have no integral Chow value; use --theory ch")
    if theory == "witt":
        raise InputError("Bockstein classes are torsion and vanish in Witt-sheaf cohomology")
    inner = evaluate(arg, cfg.with_theory("ch"))
    out: Value = {}
    for (d, _), x in inner.items():
        if theory == "ch":
            out = _add(out, {(d + 1, None): sq2(x, tw)})
        elif theory == "icoh":
            out = _add(out, {(d + 1, tw): ICohClass.from_torsion(bockstein(x, tw, degree=d), cfg.model)})
        else:
            i_part = ICohClass.from_torsion(bockstein(x, tw, degree=d), cfg.model)
            out = _add(out, {(d + 1, tw): make_class(i_part, zero_one_lift(sq2(x, tw)))})
    return out


def evaluate(node: Node, cfg: EvalConfig) -> Value:
    if isinstance(node, Int):
        return _int(cfg, node.value)
    if isinstance(node, Name):
        return _name(cfg, node.name)
    if isinstance(node, Call):
        return _call(cfg, node.fn, node.arg)
    if isinstance(node, Power):
        base = evaluate(node.base, cfg)
        out = _one(cfg)
        for _ in range(node.exp):
            out = _mul(out, base)
        return out
    if isinstance(node, Product):
        out = _one(cfg)
        for f in node.factors:
            out = _mul(out, evaluate(f, cfg))
        return out
    if isinstance(node, Sum):
        out: Value = {}
        for sign, t in node.terms:
            v = evaluate(t, cfg)
            out = _add(out, v if sign > 0 else _neg(v))
        return out
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(text: str, cfg: EvalConfig) -> Value:
    return evaluate(parse_expr(text, cfg.n), cfg)


def _sort_key(item):
    (d, tw), _ = item
    return (d, "" if tw is None else str(tw))


def components(value: Value) -> list[tuple[int, "Twist | None", object]]:
    return [(d, tw, x) for (d, tw), x in sorted(value.items(), key=_sort_key)]


def format_value(value: Value) -> str:
    out = ""
    for _, _, x in components(value):
        part = str(x)
        if not out:
            out = part
        elif part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out or "0"


__all__ = ["EvalConfig", "THEORIES", "components", "eval_expr", "evaluate", "format_value"]
