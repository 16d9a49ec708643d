"""Chow-Witt classes of BSL_n^c as compatible pairs.

CHW^j(L) is the fiber product of H^j(I^j(L)) and ker(d_{L,j}) over Ch^j, so
a class is a pair (I-cohomology class, integral Chow class) whose two mod-2
reductions agree.
"""

from __future__ import annotations

import warnings
from functools import lru_cache

from . import linalg_f2, linalg_z
from .basering import REAL, UnsupportedError, WittModel
from .chow import InputError, chern, chow_basis, chow_normal_form, mod2_reduce
from .icohomology import (
    FreePart,
    ICohClass,
    bockstein,
    free_basis,
    rho,
    rho_free,
    torsion_basis,
    witt_table,
)
from .polynomial import GradedPolynomial, bslnc_table
from .reports import GroupReport
from .steenrod import Twist, cbar_J, ker_partial_lattice, sq2, vector_of


class IncompatibleError(InputError):
    """The two halves of a pair have different mod-2 reductions."""

    def __init__(self, message: str, residual: GradedPolynomial):
        super().__init__(message)
        self.residual = residual


class ChowWittClass:
    __slots__ = ("i_part", "ch_part")

    def __init__(self, i_part: ICohClass, ch_part: GradedPolynomial, check: bool = True):
        self.i_part = i_part
        self.ch_part = ch_part
        if check:
            _validate(i_part, ch_part)

    @property
    def n(self) -> int:
        return self.i_part.n

    @property
    def degree(self) -> int:
        return self.i_part.q

    @property
    def twist(self) -> Twist:
        return self.i_part.twist

    @property
    def model(self) -> WittModel:
        return self.i_part.model

    @classmethod
    def zero(cls, n: int, j: int, twist: Twist | str = Twist.O, model: WittModel = REAL) -> "ChowWittClass":
        return cls(ICohClass.zero(n, j, twist, model), GradedPolynomial.zero(bslnc_table(n)), check=False)

    @classmethod
    def one(cls, n: int, model: WittModel = REAL) -> "ChowWittClass":
        return cls(ICohClass.one(n, model), GradedPolynomial.const(bslnc_table(n), 1), check=False)

    def is_zero(self) -> bool:
        return self.i_part.is_zero() and not self.ch_part

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChowWittClass):
            return NotImplemented
        return self.i_part == other.i_part and self.ch_part == other.ch_part

    def __hash__(self) -> int:
        return hash((self.i_part, self.ch_part))

    def __add__(self, other: "ChowWittClass") -> "ChowWittClass":
        return ChowWittClass(self.i_part + other.i_part, self.ch_part + other.ch_part, check=False)

    def __neg__(self) -> "ChowWittClass":
        return ChowWittClass(-self.i_part, -self.ch_part, check=False)

    def __sub__(self, other: "ChowWittClass") -> "ChowWittClass":
        return self + (-other)

    def __mul__(self, other: "ChowWittClass") -> "ChowWittClass":
        return cw_mul(self, other)

    def __pow__(self, k: int) -> "ChowWittClass":
        out = ChowWittClass.one(self.n, self.model)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return f"({self.i_part}, {self.ch_part if self.ch_part else '0'})"

    def __repr__(self) -> str:
        return f"ChowWittClass(n={self.n}, degree={self.degree}, twist={self.twist}, {self})"


def _validate(i_part: ICohClass, ch_part: GradedPolynomial) -> None:
    if ch_part.ring != "Z" or ch_part.table != bslnc_table(i_part.n):
        raise InputError("Chow part must be an integral polynomial on the BSL_n^c table")
    if ch_part and ch_part.degrees() != {i_part.q}:
        raise InputError(f"Chow part is not homogeneous of degree {i_part.q}")
    residual = rho(i_part) + mod2_reduce(ch_part)
    if residual:
        raise IncompatibleError(f"reductions disagree; residual {residual}", residual)


def make_class(i_part: ICohClass, ch_part: GradedPolynomial) -> ChowWittClass:
    if ch_part.table.kind == "presub":
        ch_part = chow_normal_form(ch_part)
    return ChowWittClass(i_part, ch_part)


def cw_mul(x: ChowWittClass, y: ChowWittClass) -> ChowWittClass:
    if x.model != y.model:
        raise InputError("classes use different Witt models")
    return ChowWittClass(x.i_part * y.i_part, x.ch_part * y.ch_part, check=False)


# -- characteristic classes ---------------------------------------------------


def pontryagin_chow_part(n: int, i: int) -> GradedPolynomial:
    """c_2i^2 + 2 sum_{j=max(0,4i-n)}^{2i-1} (-1)^j c_j c_{4i-j}, with c1 = 2 th."""
    total = chern(n, 2 * i) ** 2
    for j in range(max(0, 4 * i - n), 2 * i):
        total = total + chern(n, j) * chern(n, 4 * i - j) * (2 * (-1) ** j)
    return total


def pontryagin_class(n: int, i: int, model: WittModel = REAL) -> ChowWittClass:
    if not 1 <= i <= (n - 1) // 2:
        raise InputError(f"p{2 * i} is not defined for n={n}; need 1 <= i <= {(n - 1) // 2}")
    return make_class(ICohClass.free_generator(n, f"p{2 * i}", model), pontryagin_chow_part(n, i))


def euler_class(n: int, model: WittModel = REAL) -> ChowWittClass:
    if n % 2:
        raise InputError(
            f"e{n} is not a free class for odd n; it equals b(c{n - 1}), use bockstein_class(n, 'O', {{{(n - 1) // 2}}})"
        )
    return make_class(ICohClass.free_generator(n, f"e{n}", model), chern(n, n))


def theta_euler(n: int, model: WittModel = REAL) -> ChowWittClass:
    return bockstein_class(n, Twist.T, (), model)


def zero_one_lift(p: GradedPolynomial) -> GradedPolynomial:
    """Integral lift with every coefficient 0 or 1."""
    return p.map_coefficients(lambda c: c % 2, "Z")


def bockstein_class(n: int, twist: Twist | str, J=(), model: WittModel = REAL) -> ChowWittClass:
    twist = Twist.parse(twist)
    J = tuple(sorted(J))
    top = (n - 1) // 2
    if any(j < 1 or j > top for j in J) or len(set(J)) != len(J):
        raise InputError(f"index set {J} is not admissible for n={n} (indices 1..{top})")
    x = cbar_J(n, J)
    if not J and twist is Twist.O:
        warnings.warn("b(1) = 0; returning the zero class", stacklevel=2)
        return ChowWittClass.zero(n, 1, twist, model)
    i_part = ICohClass.from_torsion(bockstein(x, twist), model)
    return make_class(i_part, zero_one_lift(sq2(x, twist)))


def hyperbolic(x: GradedPolynomial, twist: Twist | str = Twist.O, model: WittModel = REAL, degree: int | None = None) -> ChowWittClass:
    """H_L(x) = (0, 2x)."""
    if x.table.kind == "presub":
        x = chow_normal_form(x)
    if x.ring != "Z":
        raise InputError("hyperbolic input must be an integral Chow polynomial")
    if x:
        if not x.is_homogeneous():
            raise InputError("hyperbolic input must be homogeneous")
        degree = x.degree()
    elif degree is None:
        degree = 0
    return ChowWittClass(ICohClass.zero(x.table.n, degree, twist, model), x * 2, check=False)


def free_monomial_class(n: int, m, model: WittModel = REAL) -> ChowWittClass:
    """Product of Pontryagin and Euler classes for an exponent vector on witt_table(n)."""
    out = ChowWittClass.one(n, model)
    for name, e in zip(witt_table(n).names, m):
        if not e:
            continue
        g = pontryagin_class(n, int(name[1:]) // 2, model) if name.startswith("p") else euler_class(n, model)
        out = out * g**e
    return out


# -- groups -------------------------------------------------------------------


def _symbolic(n: int, j: int, twist: Twist) -> GroupReport:
    report = GroupReport("chw", n, j, str(twist), "symbolic", mode="symbolic")
    a = len(free_basis(n, j)) if twist is Twist.O else 0
    b = len(chow_basis(n, j)) - a
    report.gw_rank = a
    report.z_rank = b
    if a:
        report.basis = [f"GW<{witt_table(n).format_monomial(m)}>" for m in free_basis(n, j)]
    if b:
        report.basis.append(f"Z^{b} from ker(d) modulo the GW part")
    return report


@lru_cache(maxsize=None)
def _instantiated(n: int, j: int, twist: Twist, kind: str):
    """Fiber product as K / R with K = {(free, torsion, lattice) : reductions agree}."""
    model = WittModel(kind)
    table = bslnc_table(n)
    target = chow_basis(n, j)
    frees = free_basis(n, j) if twist is Twist.O else []
    tb = torsion_basis(n, j, twist)
    lattice = ker_partial_lattice(n, j, twist)
    wt = witt_table(n)
    columns = []
    for m in frees:
        columns.append(vector_of(rho_free(FreePart(wt, model, {m: 1})), target))
    for f in tb.forms:
        columns.append(vector_of(f, target))
    for row in lattice.rows:
        columns.append(sum(1 << i for i, c in enumerate(row) if c % 2))
    a, t, r = len(frees), tb.dim, len(lattice.rows)
    k = a + t + r
    kernel = linalg_f2.nullspace(columns, len(target))
    gens = [[(v >> i) & 1 for i in range(k)] for v in kernel]
    gens += [[2 if c == i else 0 for c in range(k)] for i in range(k)]
    K = linalg_z.hnf(gens) if k else []
    rel_idx = list(range(a, a + t)) + (list(range(a)) if not model.gw_z_rank() == 2 else [])
    relations = []
    for i in rel_idx:
        v = [2 if c == i else 0 for c in range(k)]
        coords = linalg_z.solve_triangular_rows(K, v)
        if coords is None:
            raise RuntimeError("relation outside the fiber product lattice")
        relations.append(coords)
    if K and relations:
        snf = linalg_z.smith(relations, ncols=len(K))
        diag = snf.diagonal + [0] * (len(K) - len(snf.diagonal))
        torsion = [d for d in diag if d > 1]
        free_rows = [snf.V_inv[i] for i, d in enumerate(diag) if d == 0]
    else:
        torsion = []
        free_rows = [[int(i == c) for c in range(len(K))] for i in range(len(K))]
    generators = [[sum(c * K[s][col] for s, c in enumerate(row)) for col in range(k)] for row in free_rows]
    generators = linalg_z.hnf(generators) if generators else []
    for g in generators:
        for i in rel_idx:
            g[i] %= 2
    return a, t, r, torsion, generators, frees, tb, lattice


def _render_generator(n: int, j: int, twist: Twist, model: WittModel, g, frees, tb, lattice) -> ChowWittClass:
    a, t = len(frees), tb.dim
    free = FreePart(witt_table(n), model, {m: c for m, c in zip(frees, g[:a]) if c})
    torsion = GradedPolynomial.zero(bslnc_table(n), "F2")
    for c, f in zip(g[a : a + t], tb.forms):
        if c % 2:
            torsion = torsion + f
    ch = GradedPolynomial.zero(bslnc_table(n))
    for c, p in zip(g[a + t :], lattice.polynomials()):
        ch = ch + p * c
    return ChowWittClass(ICohClass(n, j, twist, model, free, torsion, check=False), ch)


def cw_generators(n: int, j: int, twist: Twist | str = Twist.O, model: WittModel = REAL) -> list[ChowWittClass]:
    """Free generators of CHW^j from the explicit fiber product."""
    twist = Twist.parse(twist)
    if not model.has_elements:
        raise UnsupportedError("unsupported on symbolic Witt model")
    _, _, _, _, generators, frees, tb, lattice = _instantiated(n, j, twist, model.kind)
    return [_render_generator(n, j, twist, model, g, frees, tb, lattice) for g in generators]


def cw_group(n: int, j: int, twist: Twist | str = Twist.O, mode: str = "symbolic", model: WittModel | None = None) -> GroupReport:
    """CHW^j(BSL_n^c, L).

    ``mode="symbolic"`` reports GW^a + Z^b; ``mode="instantiated"`` builds the
    fiber product over the given Witt model and reads off invariant factors.
    """
    twist = Twist.parse(twist)
    if j < 0:
        raise InputError("degree must be >= 0")
    if mode == "symbolic":
        report = _symbolic(n, j, twist)
        if model is not None:
            report.field = model.kind
        return report
    if mode != "instantiated":
        raise InputError(f"unknown mode {mode!r}")
    model = model or REAL
    if not model.has_elements:
        raise UnsupportedError("unsupported on symbolic Witt model")
    a, t, r, torsion, generators, frees, tb, lattice = _instantiated(n, j, twist, model.kind)
    report = GroupReport("chw", n, j, str(twist), model.kind, mode="instantiated")
    report.z_rank = len(generators)
    report.two_torsion = torsion
    report.invariant_factors = sorted(torsion) + [0] * len(generators)
    report.basis = [str(_render_generator(n, j, twist, model, g, frees, tb, lattice)) for g in generators]
    if torsion:
        report.notes.append(f"finite torsion {torsion} in the fiber product")
    return report


def expected_z_rank(n: int, j: int, twist: Twist | str, model: WittModel) -> int:
    """Z-rank of GW(k)^a + Z^b once GW(k) is instantiated."""
    sym = _symbolic(n, j, Twist.parse(twist))
    return model.gw_z_rank() * sym.gw_rank + sym.z_rank


def agreement_check(n: int, j: int, twist: Twist | str, model: WittModel = REAL) -> tuple[bool, str]:
    inst = cw_group(n, j, twist, "instantiated", model)
    want = expected_z_rank(n, j, twist, model)
    ok = inst.z_rank == want and not inst.two_torsion
    return ok, f"n={n} j={j} {twist}: instantiated Z^{inst.z_rank} torsion {inst.two_torsion}, symbolic gives Z^{want}"


__all__ = [
    "ChowWittClass",
    "IncompatibleError",
    "agreement_check",
    "bockstein_class",
    "cw_generators",
    "cw_group",
    "cw_mul",
    "euler_class",
    "expected_z_rank",
    "free_monomial_class",
    "hyperbolic",
    "make_class",
    "pontryagin_chow_part",
    "pontryagin_class",
    "theta_euler",
    "zero_one_lift",
]
