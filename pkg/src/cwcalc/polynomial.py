"""Graded polynomials over Z or F2 on a fixed table of named generators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

Monomial = tuple[int, ...]

RINGS = ("Z", "F2")


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generator names and their cohomological degrees.

    Exponent vectors are tuples indexed like ``names``.  Bases are listed in
    descending lexicographic order of these tuples, so the leading generator
    (``th`` when present) varies slowest.
    """

    kind: str
    n: int
    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("generator degrees must be positive")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} for {self.kind} n={self.n}") from None

    def unit(self, name: str) -> Monomial:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return tuple(e)

    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def basis(self, j: int) -> list[Monomial]:
        return list(monomials_of_degree(self, j))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def bslnc_table(n: int) -> GeneratorTable:
    """th, c2, ..., cn: the Chow ring of the metalinear classifying space."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    names = ("th",) + tuple(f"c{i}" for i in range(2, n + 1))
    degrees = (1,) + tuple(range(2, n + 1))
    return GeneratorTable("bslnc", n, names, degrees)


@lru_cache(maxsize=None)
def bgln_table(n: int) -> GeneratorTable:
    if n < 1:
        raise ValueError("rank must be >= 1")
    return GeneratorTable("bgln", n, tuple(f"c{i}" for i in range(1, n + 1)), tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def presub_table(n: int) -> GeneratorTable:
    """th, c1, ..., cn before imposing c1 = 2 th."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    names = ("th",) + tuple(f"c{i}" for i in range(1, n + 1))
    degrees = (1,) + tuple(range(1, n + 1))
    return GeneratorTable("presub", n, names, degrees)


@lru_cache(maxsize=None)
def monomials_of_degree(table: GeneratorTable, j: int) -> tuple[Monomial, ...]:
    if j < 0:
        return ()
    degs = table.degrees
    k = len(degs)
    out: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[int]) -> None:
        if i == k - 1:
            if remaining % degs[i] == 0:
                out.append(tuple(acc + [remaining // degs[i]]))
            return
        for e in range(remaining // degs[i], -1, -1):
            rec(i + 1, remaining - e * degs[i], acc + [e])

    if k == 0:
        return ((),) if j == 0 else ()
    rec(0, j, [])
    return tuple(out)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class GradedPolynomial:
    """Finitely supported map monomial -> coefficient, never storing zeros."""

    __slots__ = ("table", "ring", "terms", "_hash")

    def __init__(self, table: GeneratorTable, terms: Mapping[Monomial, int] | None = None, ring: str = "Z"):
        if ring not in RINGS:
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.table = table
        self.ring = ring
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            if len(m) != len(table):
                raise ValueError("exponent vector length does not match generator table")
            if ring == "F2":
                c %= 2
            if c:
                clean[m] = clean.get(m, 0) + c
        if ring == "F2":
            clean = {m: 1 for m, c in clean.items() if c % 2}
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, table: GeneratorTable, ring: str = "Z") -> "GradedPolynomial":
        return cls(table, {}, ring)

    @classmethod
    def const(cls, table: GeneratorTable, c: int, ring: str = "Z") -> "GradedPolynomial":
        return cls(table, {table.one(): c}, ring)

    @classmethod
    def gen(cls, table: GeneratorTable, name: str, ring: str = "Z") -> "GradedPolynomial":
        return cls(table, {table.unit(name): 1}, ring)

    @classmethod
    def monomial(cls, table: GeneratorTable, m: Monomial, ring: str = "Z", coeff: int = 1) -> "GradedPolynomial":
        return cls(table, {tuple(m): coeff}, ring)

    # arithmetic

    def _check(self, other: "GradedPolynomial") -> None:
        if self.table != other.table or self.ring != other.ring:
            raise ValueError(
                f"mismatched polynomial rings: {self.table.kind}/{self.ring} vs {other.table.kind}/{other.ring}"
            )

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, int):
            return GradedPolynomial.const(self.table, other, self.ring)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return GradedPolynomial(self.table, terms, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.table, {m: -c for m, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedPolynomial(self.table, {m: c * other for m, c in self.terms.items()}, self.ring)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                terms[m] = terms.get(m, 0) + ca * cb
        return GradedPolynomial(self.table, terms, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = GradedPolynomial.const(self.table, 1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GradedPolynomial.const(self.table, other, self.ring)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.table == other.table and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.table.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous nonzero polynomial; None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("polynomial is not homogeneous")
        return ds.pop()

    def homogeneous_part(self, j: int) -> "GradedPolynomial":
        return GradedPolynomial(
            self.table, {m: c for m, c in self.terms.items() if self.table.degree(m) == j}, self.ring
        )

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def substitute(self, images: Mapping[int, "GradedPolynomial"], target: GeneratorTable, ring: str | None = None) -> "GradedPolynomial":
        """Ring homomorphism sending generator index i to images[i]."""
        ring = ring or self.ring
        result = GradedPolynomial.zero(target, ring)
        powers: dict[tuple[int, int], GradedPolynomial] = {}
        for m, c in self.terms.items():
            term = GradedPolynomial.const(target, c, ring)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def map_coefficients(self, f: Callable[[int], int], ring: str) -> "GradedPolynomial":
        return GradedPolynomial(self.table, {m: f(c) for m, c in self.terms.items()}, ring)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: (-self.table.degree(mc[0]), tuple(-e for e in mc[0])))

    def to_vector(self, basis: list[Monomial]) -> list[int]:
        index = {m: i for i, m in enumerate(basis)}
        vec = [0] * len(basis)
        for m, c in self.terms.items():
            if m not in index:
                raise ValueError(f"monomial {self.table.format_monomial(m)} not in basis")
            vec[index[m]] = c
        return vec

    @classmethod
    def from_vector(cls, table: GeneratorTable, basis: Iterable[Monomial], vec: Iterable[int], ring: str = "Z") -> "GradedPolynomial":
        return cls(table, {m: c for m, c in zip(basis, vec) if c}, ring)

    def __str__(self) -> str:
        return format_terms(
            [(self.table.format_monomial(m), c) for m, c in self.sorted_terms()]
        )

    def __repr__(self) -> str:
        return f"GradedPolynomial[{self.table.kind} n={self.table.n}, {self.ring}]({self})"


def format_terms(terms: list[tuple[str, int]]) -> str:
    """Render ``[(monomial, coeff), ...]`` as ``a + 2*b - c``."""
    if not terms:
        return "0"
    out = []
    for k, (mono, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
