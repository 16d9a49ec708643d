"""I-cohomology and Witt-sheaf cohomology of BSL_n^c.

A class in H^q(BSL_n^c, I^q(L)) is stored as a free part, a W(k)-polynomial
in p2, p4, ... and (n even) e_n, together with a torsion part.  Torsion is
stored by its image under rho in Ch^q.  rho is injective on Bockstein
torsion, so that image lies in im(Sq^2_L) and determines the class; sums,
products and equality are all F2 linear algebra on those images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from . import linalg_f2
from .basering import REAL, UnsupportedError, WittModel
from .chow import InputError, chow_basis
from .polynomial import (
    GeneratorTable,
    GradedPolynomial,
    Monomial,
    bslnc_table,
    format_terms,
    monomials_of_degree,
)
from .reports import GroupReport
from .steenrod import Twist, admissible_sets, cbar_J, image_sq2_vectors, poly_of, sq2, sq2_matrix, vector_of


class NotTorsionError(ValueError):
    """The polynomial is not the reduction of a Bockstein class."""

    def __init__(self, message: str, residual: GradedPolynomial):
        super().__init__(message)
        self.residual = residual


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug rather than bad input."""


# -- free part --------------------------------------------------------------


@lru_cache(maxsize=None)
def witt_table(n: int) -> GeneratorTable:
    """p2, ..., p_{2 floor((n-1)/2)} and, for even n, e_n."""
    top = (n - 1) // 2
    names = tuple(f"p{2 * i}" for i in range(1, top + 1))
    degrees = tuple(4 * i for i in range(1, top + 1))
    if n % 2 == 0 and n >= 2:
        names += (f"e{n}",)
        degrees += (n,)
    return GeneratorTable("witt", n, names, degrees)


def free_basis(n: int, q: int) -> list[Monomial]:
    return list(monomials_of_degree(witt_table(n), q))


class FreePart:
    """W(k)-linear combination of monomials in the Pontryagin and Euler classes."""

    __slots__ = ("table", "model", "terms")

    def __init__(self, table: GeneratorTable, model: WittModel, terms: Mapping[Monomial, int] | None = None):
        self.table = table
        self.model = model
        clean = {}
        for m, c in (terms or {}).items():
            c = model.element(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    def __add__(self, other: "FreePart") -> "FreePart":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = self.model.add(terms.get(m, 0), c)
        return FreePart(self.table, self.model, terms)

    def __mul__(self, other: "FreePart") -> "FreePart":
        terms: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                terms[m] = self.model.add(terms.get(m, 0), self.model.mul(ca, cb))
        return FreePart(self.table, self.model, terms)

    def scale(self, w: int) -> "FreePart":
        return FreePart(self.table, self.model, {m: self.model.mul(c, w) for m, c in self.terms.items()})

    def __neg__(self) -> "FreePart":
        return FreePart(self.table, self.model, {m: self.model.neg(c) for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FreePart) and self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {self.table.degree(m) for m in self.terms}

    def __str__(self) -> str:
        items = sorted(self.terms.items(), key=lambda mc: tuple(-e for e in mc[0]))
        return format_terms([(self.table.format_monomial(m), c) for m, c in items])


def _rho_free_monomial(n: int, m: Monomial) -> GradedPolynomial:
    table = bslnc_table(n)
    out = GradedPolynomial.const(table, 1, "F2")
    for name, e in zip(witt_table(n).names, m):
        if not e:
            continue
        if name.startswith("p"):
            c = GradedPolynomial.gen(table, f"c{name[1:]}", "F2")
            out = out * c ** (2 * e)
        else:
            out = out * GradedPolynomial.gen(table, f"c{n}", "F2") ** e
    return out


def rho_free(part: FreePart, unit_ok: bool = True) -> GradedPolynomial:
    """Reduction of the free part: p_2i -> c_2i^2, e_n -> c_n, coefficients mod I(k)."""
    n = part.table.n
    out = GradedPolynomial.zero(bslnc_table(n), "F2")
    for m, c in part.terms.items():
        bit = part.model.reduce_unit(c) if unit_ok else part.model.reduce(c)
        if bit:
            out = out + _rho_free_monomial(n, m)
    return out


# -- torsion ----------------------------------------------------------------


@dataclass(frozen=True)
class TorsionClass:
    """A Bockstein torsion class, identified with its rho-image in Ch^q."""

    n: int
    q: int
    twist: Twist
    form: GradedPolynomial

    def __post_init__(self) -> None:
        if self.form.ring != "F2" or self.form.table != bslnc_table(self.n):
            raise InputError("torsion form must be an F2 polynomial on the BSL_n^c table")
        if self.form and self.form.degree() != self.q:
            raise InputError(f"torsion form has degree {self.form.degree()}, expected {self.q}")
        if self.form:
            _solve_image(self.n, self.q, self.twist, self.form)

    def is_zero(self) -> bool:
        return not self.form

    def __add__(self, other: "TorsionClass") -> "TorsionClass":
        _same_slot(self, other)
        return TorsionClass(self.n, self.q, self.twist, self.form + other.form)


def _same_slot(a, b) -> None:
    if (a.n, a.q, a.twist) != (b.n, b.q, b.twist):
        raise InputError(
            f"cannot add classes in different groups: (n={a.n}, q={a.q}, {a.twist}) vs (n={b.n}, q={b.q}, {b.twist})"
        )


def _solve_image(n: int, q: int, twist: Twist, form: GradedPolynomial) -> int:
    """Preimage bitmask of ``form`` under Sq^2_twist : Ch^{q-1} -> Ch^q."""
    if q < 1:
        if form:
            raise NotTorsionError("not a torsion class: nothing in degree 0 is torsion", form)
        return 0
    M = sq2_matrix(n, q - 1, twist)
    target = vector_of(form, list(M.row_labels))
    x, residual = M.solve(target)
    if x is None:
        res = poly_of(bslnc_table(n), list(M.row_labels), residual)
        raise NotTorsionError(f"not a torsion class: residual {res}", res)
    return x


def bockstein(xbar: GradedPolynomial, twist: Twist | str = Twist.O, degree: int | None = None) -> TorsionClass:
    """beta_L(xbar), represented by Sq^2_L(xbar) in degree deg(xbar) + 1."""
    twist = Twist.parse(twist)
    if xbar.table.kind != "bslnc":
        raise InputError("Bockstein input must be a mod-2 Chow polynomial on the BSL_n^c table")
    if xbar:
        if not xbar.is_homogeneous():
            raise InputError("Bockstein input must be homogeneous")
        d = xbar.degree()
        if degree is not None and degree != d:
            raise InputError(f"input has degree {d}, not {degree}")
    elif degree is None:
        raise InputError("degree is required for the zero input")
    else:
        d = degree
    return TorsionClass(xbar.table.n, d + 1, twist, sq2(xbar, twist))


def lift_torsion(c: GradedPolynomial, twist: Twist | str, q: int | None = None) -> TorsionClass:
    """The unique torsion class with rho-image ``c``; NotTorsionError otherwise."""
    twist = Twist.parse(twist)
    if c.ring != "F2":
        c = c.map_coefficients(lambda v: v % 2, "F2")
    if c:
        d = c.degree()
        if q is not None and q != d:
            raise InputError(f"polynomial has degree {d}, not {q}")
        q = d
    elif q is None:
        raise InputError("degree is required for the zero class")
    return TorsionClass(c.table.n, q, twist, c)


# -- classes ----------------------------------------------------------------


class ICohClass:
    """Element of H^q(BSL_n^c, I^q(twist)) = free part + Bockstein torsion.

    ``base`` is ``"bslnc"`` normally and ``"bsln"`` after restriction to
    BSL_n, where the torsion forms live in the th-free part of Ch.
    """

    __slots__ = ("n", "q", "twist", "model", "free", "torsion", "base")

    def __init__(
        self,
        n: int,
        q: int,
        twist: Twist | str,
        model: WittModel = REAL,
        free: FreePart | None = None,
        torsion: GradedPolynomial | None = None,
        base: str = "bslnc",
        check: bool = True,
    ):
        self.n = n
        self.q = q
        self.twist = Twist.parse(twist)
        self.model = model
        self.base = base
        self.free = free if free is not None else FreePart(witt_table(n), model)
        self.torsion = torsion if torsion is not None else GradedPolynomial.zero(bslnc_table(n), "F2")
        if check:
            self._validate()

    def _validate(self) -> None:
        if self.free and self.twist is Twist.T:
            raise InputError("twisted Witt-sheaf cohomology vanishes; a twisted class has no free part")
        if self.free.degrees() - {self.q}:
            raise InputError(f"free part is not homogeneous of degree {self.q}")
        if self.free.model != self.model:
            raise InputError("free part uses a different Witt model")
        if self.torsion:
            if self.torsion.degree() != self.q:
                raise InputError(f"torsion part is not of degree {self.q}")
            if self.base == "bslnc":
                _solve_image(self.n, self.q, self.twist, self.torsion)
            else:
                _solve_bsln_image(self.n, self.q, self.torsion)

    # constructors

    @classmethod
    def zero(cls, n: int, q: int, twist: Twist | str = Twist.O, model: WittModel = REAL) -> "ICohClass":
        return cls(n, q, twist, model, check=False)

    @classmethod
    def one(cls, n: int, model: WittModel = REAL) -> "ICohClass":
        return cls.scalar(n, 1, model)

    @classmethod
    def scalar(cls, n: int, w: int, model: WittModel = REAL) -> "ICohClass":
        table = witt_table(n)
        return cls(n, 0, Twist.O, model, FreePart(table, model, {table.one(): w}))

    @classmethod
    def from_torsion(cls, t: TorsionClass, model: WittModel = REAL) -> "ICohClass":
        return cls(t.n, t.q, t.twist, model, torsion=t.form, check=False)

    @classmethod
    def free_generator(cls, n: int, name: str, model: WittModel = REAL) -> "ICohClass":
        """p_{2i} or e_n; for odd n, e_n is resolved to beta(c_{n-1})."""
        if name == f"e{n}" and n % 2 == 1:
            return cls.from_torsion(bockstein(cbar_J(n, {(n - 1) // 2}), Twist.O), model)
        table = witt_table(n)
        try:
            m = table.unit(name)
        except KeyError:
            raise InputError(f"unknown free generator {name!r} for n={n}") from None
        return cls(n, table.degree(m), Twist.O, model, FreePart(table, model, {m: 1}))

    # structure

    @property
    def torsion_class(self) -> TorsionClass:
        return TorsionClass(self.n, self.q, self.twist, self.torsion)

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def is_torsion(self) -> bool:
        return not self.free

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ICohClass):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.n == other.n
        return (
            (self.n, self.q, self.twist, self.base) == (other.n, other.q, other.twist, other.base)
            and self.free == other.free
            and self.torsion == other.torsion
        )

    def __hash__(self) -> int:
        return hash((self.n, self.q, self.twist, self.base, self.free, self.torsion))

    def __add__(self, other: "ICohClass") -> "ICohClass":
        if not isinstance(other, ICohClass):
            return NotImplemented
        if self.is_zero() and self.n == other.n:
            return other
        if other.is_zero() and self.n == other.n:
            return self
        _same_slot(self, other)
        if self.model != other.model or self.base != other.base:
            raise InputError("classes use different Witt models or bases")
        return ICohClass(
            self.n, self.q, self.twist, self.model, self.free + other.free, self.torsion + other.torsion, self.base, check=False
        )

    def __neg__(self) -> "ICohClass":
        # torsion is 2-torsion, so only the free part changes sign
        return ICohClass(self.n, self.q, self.twist, self.model, -self.free, self.torsion, self.base, check=False)

    def __sub__(self, other: "ICohClass") -> "ICohClass":
        return self + (-other)

    def scale(self, w: int) -> "ICohClass":
        """Multiply by a W(k)-scalar; torsion is killed by I(k)."""
        torsion = self.torsion if (self.model.reduce_unit(w) if self.torsion else 0) else None
        return ICohClass(self.n, self.q, self.twist, self.model, self.free.scale(w), torsion, self.base, check=False)

    def __mul__(self, other: "ICohClass") -> "ICohClass":
        return icoh_mul(self, other)

    def __pow__(self, k: int) -> "ICohClass":
        result = ICohClass.one(self.n, self.model)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self) -> str:
        return f"ICohClass(n={self.n}, q={self.q}, twist={self.twist}, {self})"

    def __str__(self) -> str:
        return format_icoh(self)


def _solve_bsln_image(n: int, q: int, form: GradedPolynomial) -> None:
    """Check ``form`` lies in Sq^2 of the th-free part of Ch^{q-1}."""
    table = bslnc_table(n)
    if any(m[0] for m in form.terms):
        raise NotTorsionError("BSL_n torsion forms cannot involve th", form)
    source = [m for m in chow_basis(n, q - 1) if m[0] == 0]
    target = chow_basis(n, q)
    cols = [vector_of(sq2(GradedPolynomial.monomial(table, m, "F2")), target) for m in source]
    x, residual = linalg_f2.solve(cols, vector_of(form, target))
    if x is None:
        raise NotTorsionError("not a torsion class of BSL_n", poly_of(table, target, residual))


def rho(x: ICohClass) -> GradedPolynomial:
    """Reduction H^q(I^q(L)) -> Ch^q."""
    return rho_free(x.free) + x.torsion


def icoh_mul(x: ICohClass, y: ICohClass) -> ICohClass:
    """Product: polynomial product on free parts, reduce-and-lift for anything torsion."""
    if x.n != y.n:
        raise InputError("classes of different rank")
    if x.model != y.model:
        raise InputError("classes use different Witt models")
    if x.base != y.base:
        raise InputError("classes live over different classifying spaces")
    n, q, twist = x.n, x.q + y.q, x.twist + y.twist
    free = x.free * y.free
    mixed = (
        rho_free(x.free) * y.torsion
        + x.torsion * rho_free(y.free)
        + x.torsion * y.torsion
    )
    if x.base == "bslnc" and mixed:
        try:
            _solve_image(n, q, twist, mixed)
        except NotTorsionError as exc:
            raise ConsistencyError(f"product of valid classes did not lift: {exc}") from exc
    return ICohClass(n, q, twist, x.model, free, mixed, x.base, check=False)


def restrict_to_bsln(x: ICohClass) -> ICohClass:
    """Pull back along BSL_n -> BSL_n^c: th -> 0 on torsion forms."""
    if x.twist is not Twist.O:
        raise InputError("only untwisted classes restrict to BSL_n")
    table = bslnc_table(x.n)
    form = GradedPolynomial(table, {m: c for m, c in x.torsion.terms.items() if m[0] == 0}, "F2")
    return ICohClass(x.n, x.q, Twist.O, x.model, x.free, form, "bsln")


# -- named monomials ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class TorsionMonomialName:
    """bT(1)^a * prod p_{2i}^{m_i} * e_n^r * prod b(c_{2i})^{k_i} * F.

    ``F`` is ``None``, ``("b", J)`` with ``|J| >= 2`` or ``("bT", J)`` with
    ``|J| >= 1``; ``J`` is a sorted tuple of indices in 1..floor((n-1)/2).
    """

    n: int
    a: int = 0
    m: tuple[int, ...] = ()
    r: int = 0
    k: tuple[int, ...] = ()
    F: tuple[str, tuple[int, ...]] | None = None

    def __post_init__(self) -> None:
        top = (self.n - 1) // 2
        if len(self.m) != top or len(self.k) != top:
            raise InputError("exponent tuples must have length floor((n-1)/2)")
        if self.r and self.n % 2:
            raise InputError("e_n is not a free generator for odd n")
        if self.F is not None:
            kind, J = self.F
            if kind == "b" and len(J) < 2 or kind == "bT" and len(J) < 1 or kind not in ("b", "bT"):
                raise InputError(f"invalid final factor {self.F}")
            if any(j < 1 or j > top for j in J) or list(J) != sorted(set(J)):
                raise InputError(f"index set {J} is not admissible for n={self.n}")

    @property
    def twist(self) -> Twist:
        odd = (self.a + (1 if self.F is not None and self.F[0] == "bT" else 0)) % 2
        return Twist.T if odd else Twist.O

    @property
    def degree(self) -> int:
        d = self.a + self.r * self.n
        d += sum(4 * (i + 1) * e for i, e in enumerate(self.m))
        d += sum((2 * (i + 1) + 1) * e for i, e in enumerate(self.k))
        if self.F is not None:
            d += 1 + 2 * sum(self.F[1])
        return d

    def has_torsion_factor(self) -> bool:
        return self.a > 0 or any(self.k) or self.F is not None

    def rho(self) -> GradedPolynomial:
        n = self.n
        table = bslnc_table(n)
        out = GradedPolynomial.gen(table, "th", "F2") ** self.a
        for i, e in enumerate(self.m):
            if e:
                out = out * GradedPolynomial.gen(table, f"c{2 * (i + 1)}", "F2") ** (2 * e)
        if self.r:
            out = out * GradedPolynomial.gen(table, f"c{n}", "F2") ** self.r
        for i, e in enumerate(self.k):
            if e:
                out = out * GradedPolynomial.gen(table, f"c{2 * (i + 1) + 1}", "F2") ** e
        if self.F is not None:
            kind, J = self.F
            out = out * sq2(cbar_J(n, J), Twist.T if kind == "bT" else Twist.O)
        return out

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("bT(1)" + (f"^{self.a}" if self.a > 1 else ""))
        for i, e in enumerate(self.m):
            if e:
                parts.append(f"p{2 * (i + 1)}" + (f"^{e}" if e > 1 else ""))
        if self.r:
            parts.append(f"e{self.n}" + (f"^{self.r}" if self.r > 1 else ""))
        for i, e in enumerate(self.k):
            if e:
                parts.append(f"b(c{2 * (i + 1)})" + (f"^{e}" if e > 1 else ""))
        if self.F is not None:
            kind, J = self.F
            parts.append(f"{kind}({'*'.join(f'c{2 * j}' for j in J)})")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Atom:
    """A named generator inside a product: b(c_J), bT(c_J) (optionally times th), p_2i, e_n."""

    kind: str
    J: tuple[int, ...] = ()
    theta: bool = False
    index: int = 0

    @classmethod
    def b(cls, *J: int, theta: bool = False) -> "Atom":
        return cls("b", tuple(sorted(J)), theta)

    @classmethod
    def bT(cls, *J: int, theta: bool = False) -> "Atom":
        return cls("bT", tuple(sorted(J)), theta)

    @classmethod
    def p(cls, i: int) -> "Atom":
        return cls("p", index=i)

    @classmethod
    def e(cls) -> "Atom":
        return cls("e")

    def is_bockstein(self) -> bool:
        return self.kind in ("b", "bT")

    def __str__(self) -> str:
        if self.kind == "p":
            return f"p{2 * self.index}"
        if self.kind == "e":
            return "e"
        inner = "*".join((["th"] if self.theta else []) + [f"c{2 * j}" for j in self.J]) or "1"
        return f"{self.kind}({inner})"


class _State:
    __slots__ = ("n", "a", "m", "r", "k", "Fs", "dead")

    def __init__(self, n: int):
        top = (n - 1) // 2
        self.n = n
        self.a = 0
        self.m = [0] * top
        self.r = 0
        self.k = [0] * top
        self.Fs: list[tuple[str, tuple[int, ...]]] = []
        self.dead = False

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.n, s.a, s.r, s.dead = self.n, self.a, self.r, self.dead
        s.m, s.k, s.Fs = list(self.m), list(self.k), list(self.Fs)
        return s

    def add_pontryagin(self, J: Iterable[int]) -> None:
        for j in J:
            self.m[j - 1] += 1

    def add_bockstein(self, kind: str, J: tuple[int, ...], theta: bool = False) -> None:
        if theta:
            # beta(th c_J) = bT(c_J) bT(1) and bT(th c_J) = b(c_J) bT(1)
            self.a += 1
            kind = "bT" if kind == "b" else "b"
        if kind == "b":
            if not J:
                self.dead = True
            elif len(J) == 1:
                self.k[J[0] - 1] += 1
            else:
                self.Fs.append(("b", J))
        else:
            if not J:
                self.a += 1
            else:
                self.Fs.append(("bT", J))

    def name(self) -> TorsionMonomialName:
        F = self.Fs[0] if self.Fs else None
        return TorsionMonomialName(self.n, self.a, tuple(self.m), self.r, tuple(self.k), F)


def _check_J(n: int, J: tuple[int, ...]) -> tuple[int, ...]:
    top = (n - 1) // 2
    if any(j < 1 or j > top for j in J) or len(set(J)) != len(J):
        raise InputError(f"index set {set(J) or '{}'} is not admissible for n={n} (indices 1..{top})")
    return tuple(sorted(J))


def _sym_diff(A: Iterable[int], B: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(A) ^ set(B)))


def _expand_pair(state: _State, f1, f2) -> list[_State]:
    """Rewrite f1 * f2 inside ``state`` by the Bockstein product rules."""
    out = []
    if f1[0] != "b" and f2[0] == "b":
        f1, f2 = f2, f1
    (k1, J), (k2, Jp) = f1, f2
    if k1 == "b":
        # beta(c_J) beta_L(c_J') = sum_{k in J} beta(c_2k) P_{(J-k) & J'} beta_L(c_{(J-k) ^ J'})
        for kk in J:
            rest = tuple(j for j in J if j != kk)
            s = state.copy()
            s.k[kk - 1] += 1
            s.add_pontryagin(set(rest) & set(Jp))
            s.add_bockstein(k2, _sym_diff(rest, Jp))
            if not s.dead:
                out.append(s)
    else:
        # bT(c_J) bT(c_J') = beta(c_J) beta(c_J') + bT(1) P_{J & J'} bT(c_{J ^ J'})
        s = state.copy()
        s.add_bockstein("b", J)
        s.add_bockstein("b", Jp)
        if not s.dead:
            out.append(s)
        s = state.copy()
        s.a += 1
        s.add_pontryagin(set(J) & set(Jp))
        s.add_bockstein("bT", _sym_diff(J, Jp))
        if not s.dead:
            out.append(s)
    return out


def icoh_mul_formula(*operands: Iterable[Atom], n: int, budget: int = 100_000) -> dict[TorsionMonomialName, int]:
    """Multiply products of named generators using only the closed product rules.

    Returns the F2-combination as ``{name: 1}``.
    """
    start = _State(n)
    saw_bockstein = False
    for operand in operands:
        for atom in operand:
            if atom.kind == "p":
                if not 1 <= atom.index <= (n - 1) // 2:
                    raise InputError(f"p{2 * atom.index} is not a generator for n={n}")
                start.m[atom.index - 1] += 1
            elif atom.kind == "e":
                if n % 2 == 0:
                    start.r += 1
                else:
                    # e_{2k+1} = beta(c_{2k})
                    saw_bockstein = True
                    start.k[(n - 1) // 2 - 1] += 1
            elif atom.is_bockstein():
                saw_bockstein = True
                start.add_bockstein(atom.kind, _check_J(n, atom.J), atom.theta)
            else:
                raise InputError(f"unknown atom kind {atom.kind!r}")
    if not saw_bockstein:
        raise InputError("product has no Bockstein factor, so it is not torsion")
    result: dict[TorsionMonomialName, int] = {}
    work = [] if start.dead else [start]
    steps = 0
    while work:
        steps += 1
        if steps > budget:
            raise ConsistencyError("product rules did not terminate within the step budget")
        s = work.pop()
        if len(s.Fs) <= 1:
            name = s.name()
            result[name] = result.get(name, 0) ^ 1
            continue
        f1, f2 = s.Fs[0], s.Fs[1]
        base = s.copy()
        base.Fs = base.Fs[2:]
        work.extend(_expand_pair(base, f1, f2))
    return {k: 1 for k, v in result.items() if v}


def rho_of_names(names: Mapping[TorsionMonomialName, int] | Iterable[TorsionMonomialName], n: int) -> GradedPolynomial:
    out = GradedPolynomial.zero(bslnc_table(n), "F2")
    for name in names:
        out = out + name.rho()
    return out


def atoms_rho(atoms: Iterable[Atom], n: int) -> GradedPolynomial:
    """rho of a product of atoms computed directly in Ch."""
    table = bslnc_table(n)
    th = GradedPolynomial.gen(table, "th", "F2")
    out = GradedPolynomial.const(table, 1, "F2")
    for atom in atoms:
        if atom.kind == "p":
            out = out * GradedPolynomial.gen(table, f"c{2 * atom.index}", "F2") ** 2
        elif atom.kind == "e":
            out = out * GradedPolynomial.gen(table, f"c{n}", "F2")
        else:
            x = cbar_J(n, atom.J)
            if atom.theta:
                x = th * x
            out = out * sq2(x, Twist.T if atom.kind == "bT" else Twist.O)
    return out


# -- bases and groups -----------------------------------------------------------


def _bounded_vectors(weights: list[int], total: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors e with sum e_i w_i <= total."""
    if not weights:
        yield ()
        return
    w = weights[0]
    for e in range(total // w + 1):
        for rest in _bounded_vectors(weights[1:], total - e * w):
            yield (e,) + rest


def candidate_names(n: int, q: int, twist: Twist) -> list[TorsionMonomialName]:
    """Named torsion monomials of degree q and the given twist, preferred first.

    For the twisted part the first two groups are bT(1)^even * ... * bT(c_J)
    and bT(1)^odd * ...; the untwisted part uses the analogous parity-shifted
    groups, then b(c_J) with |J| >= 2 as a final factor.  Every group
    allows Pontryagin, Euler (n even) and singleton b(c_2i) factors.
    """
    top = (n - 1) // 2
    sets = [J for J in admissible_sets(n) if J]
    finals: list[tuple[str, tuple[str, tuple[int, ...]] | None]] = []
    bT_finals = [("bT", tuple(sorted(J))) for J in sets]
    b_finals = [("b", tuple(sorted(J))) for J in sets if len(J) >= 2]
    if twist is Twist.T:
        groups = [(0, bT_finals), (1, [None]), (1, b_finals)]
    else:
        groups = [(1, bT_finals), (0, [None]), (0, b_finals)]
    weights = [4 * i for i in range(1, top + 1)] + ([n] if n % 2 == 0 else []) + [2 * i + 1 for i in range(1, top + 1)]
    out: list[TorsionMonomialName] = []
    seen = set()
    for parity, group in groups:
        for F in group:
            fdeg = 0 if F is None else 1 + 2 * sum(F[1])
            for a in range(parity, q + 1, 2):
                rest = q - a - fdeg
                if rest < 0:
                    break
                for vec in _bounded_vectors(weights, rest):
                    if sum(v * w for v, w in zip(vec, weights)) != rest:
                        continue
                    m = vec[:top]
                    r = vec[top] if n % 2 == 0 else 0
                    k = vec[top + (1 if n % 2 == 0 else 0):]
                    name = TorsionMonomialName(n, a, tuple(m), r, tuple(k), F)
                    if not name.has_torsion_factor() or name in seen:
                        continue
                    seen.add(name)
                    out.append(name)
    return out


@dataclass
class TorsionBasis:
    n: int
    q: int
    twist: Twist
    forms: list[GradedPolynomial]
    names: list[TorsionMonomialName] = field(default_factory=list)
    named_forms: list[GradedPolynomial] = field(default_factory=list)
    candidate_count: int = 0

    @property
    def dim(self) -> int:
        return len(self.forms)

    @property
    def names_complete(self) -> bool:
        return len(self.names) == self.dim

    @property
    def names_exact(self) -> bool:
        """Candidate names biject with the canonical basis."""
        return self.names_complete and self.candidate_count == self.dim

    def classes(self) -> list[TorsionClass]:
        return [TorsionClass(self.n, self.q, self.twist, f) for f in self.forms]

    def labels(self) -> list[str]:
        if self.names_complete:
            return [str(nm) for nm in self.names]
        return [f"{'bT' if self.twist is Twist.T else 'b'}-image {f}" for f in self.forms]

    def express(self, form: GradedPolynomial) -> list[TorsionMonomialName] | None:
        """Write a torsion form as a sum of the chosen names, if they span."""
        if not self.names_complete:
            return None
        target = list(chow_basis(self.n, self.q))
        cols = [vector_of(f, target) for f in self.named_forms]
        x, residual = linalg_f2.solve(cols, vector_of(form, target))
        if x is None:
            raise NotTorsionError("not a torsion class", form)
        return [self.names[i] for i in linalg_f2.bits(x)]


@lru_cache(maxsize=None)
def torsion_basis(n: int, q: int, twist: Twist | str = Twist.O) -> TorsionBasis:
    twist = Twist.parse(twist)
    table = bslnc_table(n)
    target = chow_basis(n, q)
    vectors = list(image_sq2_vectors(n, q, twist))
    forms = [poly_of(table, target, v) for v in vectors]
    basis = TorsionBasis(n, q, twist, forms)
    if q < 1 or not forms:
        return basis
    candidates = candidate_names(n, q, twist)
    basis.candidate_count = len(candidates)
    chosen: list[tuple[TorsionMonomialName, int]] = []
    echelon: list[int] = []
    for name in candidates:
        v = vector_of(name.rho(), target)
        if linalg_f2.reduce_against(v, echelon):
            echelon = linalg_f2.rref(echelon + [v])
            chosen.append((name, v))
        if len(chosen) == len(forms):
            break
    chosen.sort(key=lambda nv: (-nv[0].a, str(nv[0])))
    basis.names = [nm for nm, _ in chosen]
    basis.named_forms = [poly_of(table, target, v) for _, v in chosen]
    return basis


def witt_group(n: int, q: int, twist: Twist | str = Twist.O, field_name: str = "symbolic") -> GroupReport:
    twist = Twist.parse(twist)
    report = GroupReport("witt", n, q, str(twist), field_name)
    if twist is Twist.O:
        monos = free_basis(n, q)
        report.w_rank = len(monos)
        report.basis = [witt_table(n).format_monomial(m) for m in monos]
    return report


def icoh_group(n: int, q: int, twist: Twist | str = Twist.O, model: WittModel = REAL) -> GroupReport:
    twist = Twist.parse(twist)
    report = GroupReport("icoh", n, q, str(twist), model.kind)
    if twist is Twist.O:
        monos = free_basis(n, q)
        report.w_rank = len(monos)
        report.basis = [witt_table(n).format_monomial(m) for m in monos]
    tb = torsion_basis(n, q, twist)
    report.torsion_rank = tb.dim
    report.basis += tb.labels()
    if tb.dim and not tb.names_exact:
        if tb.names_complete:
            report.notes.append(f"{tb.candidate_count} candidate names for {tb.dim} torsion generators")
        else:
            report.notes.append("candidate names do not span the torsion; canonical forms shown")
    return report


def format_icoh(x: ICohClass) -> str:
    """Parseable rendering: free part, then torsion via names or b(...)/bT(...)."""
    pieces = []
    if x.free:
        pieces.append(str(x.free))
    if x.torsion:
        if x.base == "bslnc":
            names = torsion_basis(x.n, x.q, x.twist).express(x.torsion)
        else:
            names = None
        if names is not None:
            pieces.extend(str(nm) for nm in names)
        else:
            pieces.append(_preimage_expr(x))
    return " + ".join(pieces) if pieces else "0"


def _preimage_expr(x: ICohClass) -> str:
    if x.base == "bsln":
        return f"bsln-torsion[{x.torsion}]"
    pre = _solve_image(x.n, x.q, x.twist, x.torsion)
    source = chow_basis(x.n, x.q - 1)
    poly = poly_of(bslnc_table(x.n), source, pre)
    return f"{'bT' if x.twist is Twist.T else 'b'}({poly})"


def torsion_from_name(name: TorsionMonomialName, model: WittModel = REAL) -> ICohClass:
    return ICohClass(name.n, name.degree, name.twist, model, torsion=name.rho())


__all__ = [
    "Atom",
    "ConsistencyError",
    "FreePart",
    "ICohClass",
    "NotTorsionError",
    "TorsionBasis",
    "TorsionClass",
    "TorsionMonomialName",
    "UnsupportedError",
    "bockstein",
    "candidate_names",
    "free_basis",
    "icoh_group",
    "icoh_mul",
    "icoh_mul_formula",
    "lift_torsion",
    "restrict_to_bsln",
    "rho",
    "rho_free",
    "torsion_basis",
    "witt_group",
    "witt_table",
]
