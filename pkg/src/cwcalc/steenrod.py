"""The motivic Steenrod square Sq^2 on Ch(BSL_n^c) and its Theta-twist.

On Ch = F2[th, c2, ..., cn] the square acts as a derivation with
th -> th^2, c_i -> c_{i+1} for even i < n and c_i -> 0 otherwise.  The
twisted square is Sq^2_T(x) = th*x + Sq^2(x).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from . import linalg_f2, linalg_z
from .chow import InputError, chow_basis, mod2_reduce
from .linalg_f2 import F2Matrix
from .polynomial import GeneratorTable, GradedPolynomial, Monomial, bgln_table, bslnc_table, monomials_of_degree


class Twist(enum.Enum):
    O = "O"
    T = "T"

    def __add__(self, other: "Twist") -> "Twist":
        return Twist.O if self is other else Twist.T

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, value) -> "Twist":
        if isinstance(value, Twist):
            return value
        try:
            return cls(str(value))
        except ValueError:
            raise InputError(f"unknown twist {value!r}; expected O or T") from None


def _generator_images_bslnc(n: int) -> list[GradedPolynomial]:
    table = bslnc_table(n)
    th = GradedPolynomial.gen(table, "th", "F2")
    images = [th * th]
    for i in range(2, n + 1):
        if i % 2 == 0 and i < n:
            images.append(GradedPolynomial.gen(table, f"c{i + 1}", "F2"))
        else:
            images.append(GradedPolynomial.zero(table, "F2"))
    return images


def _generator_images_bgln(n: int) -> list[GradedPolynomial]:
    table = bgln_table(n)
    c1 = GradedPolynomial.gen(table, "c1", "F2")
    images = []
    for j in range(1, n + 1):
        img = c1 * GradedPolynomial.gen(table, f"c{j}", "F2")
        if j < n and (j - 1) % 2:
            img = img + GradedPolynomial.gen(table, f"c{j + 1}", "F2")
        images.append(img)
    return images


def _derivation(p: GradedPolynomial, images: list[GradedPolynomial]) -> GradedPolynomial:
    table = p.table
    out: dict[Monomial, int] = {}
    for m, _ in p.terms.items():
        for i, e in enumerate(m):
            if e % 2 == 0 or not images[i]:
                continue
            rest = list(m)
            rest[i] -= 1
            rest = tuple(rest)
            for mono in images[i].terms:
                key = tuple(a + b for a, b in zip(rest, mono))
                out[key] = out.get(key, 0) ^ 1
    return GradedPolynomial(table, out, "F2")


def _as_f2(p: GradedPolynomial, kind: str) -> GradedPolynomial:
    if p.table.kind != kind:
        raise InputError(f"expected a polynomial on the {kind} table, got {p.table.kind}")
    return p if p.ring == "F2" else mod2_reduce(p)


def sq2(p: GradedPolynomial, twist: Twist | str = Twist.O) -> GradedPolynomial:
    """Sq^2 or Sq^2_Theta on Ch(BSL_n^c)."""
    twist = Twist.parse(twist)
    p = _as_f2(p, "bslnc")
    n = p.table.n
    result = _derivation(p, _images_bslnc(n))
    if twist is Twist.T:
        result = result + GradedPolynomial.gen(p.table, "th", "F2") * p
    return result


def sq2_bgln(p: GradedPolynomial) -> GradedPolynomial:
    """Sq^2 on Ch(BGL_n): c_j -> c1 c_j + (j - 1) c_{j+1}."""
    p = _as_f2(p, "bgln")
    return _derivation(p, _images_bgln(p.table.n))


@lru_cache(maxsize=None)
def _images_bslnc(n: int) -> tuple[GradedPolynomial, ...]:
    return tuple(_generator_images_bslnc(n))


@lru_cache(maxsize=None)
def _images_bgln(n: int) -> tuple[GradedPolynomial, ...]:
    return tuple(_generator_images_bgln(n))


def vector_of(p: GradedPolynomial, basis: list[Monomial]) -> int:
    """Bitmask of an F2 polynomial in the given monomial basis."""
    index = {m: i for i, m in enumerate(basis)}
    v = 0
    for m in p.terms:
        try:
            v ^= 1 << index[m]
        except KeyError:
            raise InputError(f"{p.table.format_monomial(m)} is not in the expected degree") from None
    return v


def poly_of(table: GeneratorTable, basis: list[Monomial], v: int) -> GradedPolynomial:
    return GradedPolynomial(table, {basis[i]: 1 for i in linalg_f2.bits(v)}, "F2")


@lru_cache(maxsize=None)
def sq2_matrix(n: int, j: int, twist: Twist | str = Twist.O) -> F2Matrix:
    """Matrix of Sq^2_twist : Ch^j -> Ch^{j+1} in the chow_basis bases."""
    twist = Twist.parse(twist)
    table = bslnc_table(n)
    source = chow_basis(n, j)
    target = chow_basis(n, j + 1)
    cols = tuple(vector_of(sq2(GradedPolynomial.monomial(table, m, "F2"), twist), target) for m in source)
    return F2Matrix(tuple(target), tuple(source), cols)


@lru_cache(maxsize=None)
def sq2_bgln_matrix(n: int, j: int) -> F2Matrix:
    table = bgln_table(n)
    source = list(monomials_of_degree(table, j))
    target = list(monomials_of_degree(table, j + 1))
    cols = tuple(vector_of(sq2_bgln(GradedPolynomial.monomial(table, m, "F2")), target) for m in source)
    return F2Matrix(tuple(target), tuple(source), cols)


@lru_cache(maxsize=None)
def _kernel_vectors(n: int, j: int, twist: Twist) -> tuple[int, ...]:
    return tuple(sq2_matrix(n, j, twist).kernel())


def ker_sq2(n: int, j: int, twist: Twist | str = Twist.O) -> list[GradedPolynomial]:
    """Reduced echelon basis of ker(Sq^2_twist) in Ch^j."""
    twist = Twist.parse(twist)
    if j < 0:
        return []
    basis = chow_basis(n, j)
    return [poly_of(bslnc_table(n), basis, v) for v in _kernel_vectors(n, j, twist)]


def ker_sq2_vectors(n: int, j: int, twist: Twist | str = Twist.O) -> list[int]:
    if j < 0:
        return []
    return list(_kernel_vectors(n, j, Twist.parse(twist)))


@lru_cache(maxsize=None)
def image_sq2_vectors(n: int, q: int, twist: Twist | str = Twist.O) -> tuple[int, ...]:
    """Reduced echelon basis of im(Sq^2_twist : Ch^{q-1} -> Ch^q)."""
    twist = Twist.parse(twist)
    if q < 1:
        return ()
    return tuple(sq2_matrix(n, q - 1, twist).image())


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of CH^j, rows in row-Hermite form over chow_basis."""

    n: int
    j: int
    basis: tuple[Monomial, ...]
    rows: tuple[tuple[int, ...], ...]

    def polynomials(self) -> list[GradedPolynomial]:
        table = bslnc_table(self.n)
        return [GradedPolynomial.from_vector(table, self.basis, r) for r in self.rows]

    def index(self) -> int:
        det = 1
        for i, r in enumerate(self.rows):
            det *= r[i]
        return det

    def contains(self, p: GradedPolynomial) -> bool:
        return linalg_z.solve_triangular_rows([list(r) for r in self.rows], p.to_vector(list(self.basis))) is not None

    def coordinates(self, p: GradedPolynomial) -> list[int] | None:
        return linalg_z.solve_triangular_rows([list(r) for r in self.rows], p.to_vector(list(self.basis)))


@lru_cache(maxsize=None)
def ker_partial_lattice(n: int, j: int, twist: Twist | str = Twist.O) -> Lattice:
    """{x in CH^j : Sq^2_twist(x mod 2) = 0}, a finite-index sublattice."""
    twist = Twist.parse(twist)
    basis = chow_basis(n, j)
    r = len(basis)
    gens = []
    for v in _kernel_vectors(n, j, twist):
        gens.append([(v >> i) & 1 for i in range(r)])
    for i in range(r):
        gens.append([2 if k == i else 0 for k in range(r)])
    rows = linalg_z.hnf(gens) if r else []
    return Lattice(n, j, tuple(basis), tuple(tuple(row) for row in rows))


# -- kernel lemmas -------------------------------------------------------


def admissible_sets(n: int) -> list[frozenset[int]]:
    """All J subset of {1, ..., floor((n-1)/2)}, empty set first."""
    top = (n - 1) // 2
    out = []
    for mask in range(1 << top):
        out.append(frozenset(i + 1 for i in range(top) if (mask >> i) & 1))
    return sorted(out, key=lambda J: (len(J), sorted(J)))


def cbar_J(n: int, J, ring: str = "F2") -> GradedPolynomial:
    table = bslnc_table(n)
    p = GradedPolynomial.const(table, 1, ring)
    for j in sorted(J):
        p = p * GradedPolynomial.gen(table, f"c{2 * j}", ring)
    return p


def untwisted_kernel_generators(n: int) -> list[GradedPolynomial]:
    """Ring generators of ker(Sq^2) claimed by the untwisted kernel lemma."""
    table = bslnc_table(n)
    th = GradedPolynomial.gen(table, "th", "F2")
    gens = [th * th]
    for i in range(3, n + 1, 2):
        gens.append(GradedPolynomial.gen(table, f"c{i}", "F2"))
    for i in range(2, n + 1, 2):
        c = GradedPolynomial.gen(table, f"c{i}", "F2")
        gens.append(c * c)
    if n >= 2:
        gens.append(GradedPolynomial.gen(table, f"c{n}", "F2"))
    for J in admissible_sets(n):
        for e in (0, 1):
            g = sq2(cbar_J(n, J) * (th ** e))
            if g:
                gens.append(g)
    return gens


def _multiply_spaces(n: int, gens: list[GradedPolynomial], base: dict[int, list[int]], j: int) -> list[int]:
    """Span of g * b over generators g and basis vectors b of base[j - deg g]."""
    table = bslnc_table(n)
    target = chow_basis(n, j)
    vecs = []
    for g in gens:
        d = g.degree()
        k = j - d
        if k < 0 or k not in base:
            continue
        src = chow_basis(n, k)
        for v in base[k]:
            vecs.append(vector_of(g * poly_of(table, src, v), target))
    return linalg_f2.rref(vecs)


@dataclass
class KernelCheck:
    n: int
    j_max: int
    twist: Twist
    failed_degree: int | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failed_degree is None

    def __bool__(self) -> bool:
        return self.ok


def subring_spans(n: int, j_max: int) -> dict[int, list[int]]:
    """Degree-wise spans of the subring generated by the untwisted kernel generators."""
    gens = untwisted_kernel_generators(n)
    spans: dict[int, list[int]] = {0: [1]}
    for j in range(1, j_max + 1):
        spans[j] = _multiply_spaces(n, gens, spans, j)
    return spans


def kernel_subring_check(n: int, j_max: int, twist: Twist | str = Twist.O) -> KernelCheck:
    """Compare the generated subring / module with ker Sq^2 degree by degree."""
    twist = Twist.parse(twist)
    result = KernelCheck(n, j_max, twist)
    if twist is Twist.O:
        spans = subring_spans(n, j_max)
    else:
        module_gens = [sq2(cbar_J(n, J), Twist.T) for J in admissible_sets(n)]
        module_gens = [g for g in module_gens if g]
        untwisted = {k: ker_sq2_vectors(n, k, Twist.O) for k in range(j_max + 1)}
        spans = {j: _multiply_spaces(n, module_gens, untwisted, j) for j in range(j_max + 1)}
    for j in range(j_max + 1):
        kernel = ker_sq2_vectors(n, j, twist)
        if spans[j] != linalg_f2.rref(kernel):
            result.failed_degree = j
            result.detail = f"generated dim {len(spans[j])}, kernel dim {len(kernel)}"
            break
    return result
