"""Integral and mod-2 Chow rings of BSL_n^c and BGL_n.

CH(BSL_n^c) = Z[c1, ..., cn, th]/(c1 - 2 th), a free Z-module on the
monomials in th, c2, ..., cn.  Everything here is computed one degree at a
time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import linalg_z
from .polynomial import (
    GeneratorTable,
    GradedPolynomial,
    Monomial,
    bgln_table,
    bslnc_table,
    monomials_of_degree,
    presub_table,
)


class InputError(ValueError):
    """Malformed or out-of-range input."""


_MONO_RE = re.compile(r"^\s*([A-Za-z]+\d*)\s*(?:\^\s*(\d+))?\s*$")


def poly_from_terms(table: GeneratorTable, terms: dict[str, int], ring: str = "Z") -> GradedPolynomial:
    """Build a polynomial from ``{"c1^2*c2": 3, "1": -1, ...}``."""
    out: dict[Monomial, int] = {}
    for text, coeff in terms.items():
        exps = [0] * len(table)
        if text.strip() != "1":
            for factor in text.split("*"):
                match = _MONO_RE.match(factor)
                if not match:
                    raise InputError(f"cannot parse monomial {text!r}")
                name, power = match.group(1), int(match.group(2) or 1)
                try:
                    exps[table.index(name)] += power
                except KeyError as exc:
                    raise InputError(str(exc)) from None
        m = tuple(exps)
        out[m] = out.get(m, 0) + coeff
    return GradedPolynomial(table, out, ring)


def chern(n: int, i: int, ring: str = "Z") -> GradedPolynomial:
    """c_i in CH(BSL_n^c): c0 = 1, c1 = 2 th, c_i = 0 for i > n."""
    table = bslnc_table(n)
    if i < 0 or i > n:
        return GradedPolynomial.zero(table, ring)
    if i == 0:
        return GradedPolynomial.const(table, 1, ring)
    if i == 1:
        return GradedPolynomial.gen(table, "th", ring) * 2
    return GradedPolynomial.gen(table, f"c{i}", ring)


def theta(n: int, ring: str = "Z") -> GradedPolynomial:
    return GradedPolynomial.gen(bslnc_table(n), "th", ring)


def chow_normal_form(p: GradedPolynomial) -> GradedPolynomial:
    """Impose c1 = 2 th on a polynomial in th, c1, ..., cn."""
    if p.table.kind == "bslnc":
        return p
    if p.table.kind != "presub":
        raise InputError(f"expected a polynomial in th, c1..cn, got table {p.table.kind}")
    n = p.table.n
    images = {0: theta(n, p.ring), 1: chern(n, 1, p.ring)}
    for i in range(2, n + 1):
        images[i] = chern(n, i, p.ring)
    return p.substitute(images, bslnc_table(n))


def poly_mul(a: GradedPolynomial, b: GradedPolynomial) -> GradedPolynomial:
    if a.table != b.table or a.ring != b.ring:
        raise InputError("polynomials live in different rings")
    return a * b


def chow_basis(n: int, j: int, ring: str = "Z") -> list[Monomial]:
    """Monomials th^a c2^e2 ... cn^en of degree j.

    Both Z and F2 share this basis; ``ring`` is accepted for symmetry.
    """
    if ring not in ("Z", "F2"):
        raise InputError(f"unknown ring {ring!r}")
    return list(monomials_of_degree(bslnc_table(n), j))


def mod2_reduce(p: GradedPolynomial) -> GradedPolynomial:
    return p.map_coefficients(lambda c: c % 2, "F2")


def motivic_bidegree(m: Monomial, n: int | None = None) -> tuple[int, int]:
    table = bslnc_table(n if n is not None else len(m))
    if len(m) != len(table):
        raise InputError("exponent vector does not match the BSL_n^c table")
    d = table.degree(m)
    return (2 * d, d)


def pullback_from_bgln(p: GradedPolynomial) -> GradedPolynomial:
    """Restriction along BSL_n^c -> BGL_n: c1 -> 2 th (0 mod 2), c_i -> c_i."""
    if p.table.kind != "bgln":
        raise InputError("expected a polynomial on the BGL_n table")
    n = p.table.n
    images = {0: chern(n, 1, p.ring)}
    for i in range(2, n + 1):
        images[i - 1] = chern(n, i, p.ring)
    return p.substitute(images, bslnc_table(n))


def multiplication_matrix(factor: GradedPolynomial, j: int) -> tuple[list[Monomial], list[Monomial], list[list[int]]]:
    """Matrix of x -> factor * x from degree j - deg(factor) to degree j."""
    table = factor.table
    d = factor.degree()
    source = list(monomials_of_degree(table, j - d))
    target = list(monomials_of_degree(table, j))
    index = {m: i for i, m in enumerate(target)}
    rows = [[0] * len(source) for _ in target]
    for c, m in enumerate(source):
        image = factor * GradedPolynomial.monomial(table, m, factor.ring)
        for mono, coeff in image.terms.items():
            rows[index[mono]][c] = coeff
    return source, target, rows


@dataclass
class LocalizationCheck:
    n: int
    j: int
    injective: bool
    coker_rank: int
    expected_rank: int
    torsion: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.injective and not self.torsion and self.coker_rank == self.expected_rank

    def __bool__(self) -> bool:
        return self.ok

    @property
    def message(self) -> str:
        if self.ok:
            return f"n={self.n} j={self.j}: cokernel free of rank {self.coker_rank}"
        return (
            f"n={self.n} j={self.j}: injective={self.injective}, cokernel rank "
            f"{self.coker_rank} (expected {self.expected_rank}), torsion {self.torsion}"
        )


def localization_cokernel_check(n: int, j: int) -> LocalizationCheck:
    """Check CH^j = coker(c1 - 2 th : Z[th, c1..cn]^{j-1} -> Z[th, c1..cn]^j) by SNF."""
    if j < 1:
        raise InputError("degree must be >= 1")
    table = presub_table(n)
    factor = GradedPolynomial.gen(table, "c1") - GradedPolynomial.gen(table, "th") * 2
    source, target, rows = multiplication_matrix(factor, j)
    factors = linalg_z.invariant_factors(rows) if source else []
    injective = len(factors) == len(source)
    return LocalizationCheck(
        n=n,
        j=j,
        injective=injective,
        coker_rank=len(target) - len(factors),
        expected_rank=len(chow_basis(n, j)),
        torsion=[d for d in factors if d != 1],
    )


__all__ = [
    "InputError",
    "LocalizationCheck",
    "bgln_table",
    "bslnc_table",
    "chern",
    "chow_basis",
    "chow_normal_form",
    "localization_cokernel_check",
    "mod2_reduce",
    "motivic_bidegree",
    "multiplication_matrix",
    "poly_from_terms",
    "poly_mul",
    "presub_table",
    "pullback_from_bgln",
    "theta",
]
