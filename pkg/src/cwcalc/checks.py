"""Oracle suites: each one recomputes a structural fact by independent linear algebra.

A suite returns a SuiteResult; ``ok`` is False as soon as one case fails and
``counterexample`` then describes that case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import linalg_f2
from .basering import QUADCLOSED, REAL
from .chow import chow_basis, localization_cokernel_check, mod2_reduce, pullback_from_bgln
from .chowwitt import (
    ChowWittClass,
    agreement_check,
    bockstein_class,
    euler_class,
    hyperbolic,
    make_class,
    pontryagin_chow_part,
    pontryagin_class,
    theta_euler,
    zero_one_lift,
)
from .icohomology import (
    Atom,
    FreePart,
    ICohClass,
    atoms_rho,
    bockstein,
    free_basis,
    icoh_mul_formula,
    lift_torsion,
    rho_of_names,
    torsion_basis,
    witt_table,
)
from .polynomial import GradedPolynomial, bgln_table, bslnc_table, monomials_of_degree
from .steenrod import (
    Twist,
    admissible_sets,
    cbar_J,
    ker_sq2_vectors,
    kernel_subring_check,
    poly_of,
    sq2,
    sq2_bgln,
    sq2_matrix,
    vector_of,
)

TWISTS = (Twist.O, Twist.T)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    counterexample: str | None = None
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def fail(self, message: str) -> "SuiteResult":
        if self.counterexample is None:
            self.counterexample = message
        return self

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" first counterexample: {self.counterexample}" if not self.ok else ""
        return f"{status} {self.name} ({self.cases} cases){tail}"


def random_poly(rng: random.Random, n: int, j: int) -> GradedPolynomial:
    basis = chow_basis(n, j)
    return GradedPolynomial(bslnc_table(n), {m: 1 for m in basis if rng.random() < 0.5}, "F2")


# -- steenrod ---------------------------------------------------------------------


def sq2_nilpotent(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("sq2-nilpotent")
    for n in range(1, n_max + 1):
        for j in range(q_max + 1):
            for tw in TWISTS:
                res.cases += 1
                if not sq2_matrix(n, j + 1, tw).compose(sq2_matrix(n, j, tw)).is_zero():
                    return res.fail(f"n={n} j={j} twist={tw}: Sq2 o Sq2 != 0")
    return res


def derivation(n_max: int = 6, q_max: int = 10, samples: int = 500, seed: int = 0, **_) -> SuiteResult:
    """Cartan formula Sq2_{L+L'}(ab) = Sq2_L(a) b + a Sq2_L'(b); untwisted case is the derivation law."""
    res = SuiteResult("derivation")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        da = rng.randint(0, q_max)
        db = rng.randint(0, q_max - da)
        a, b = random_poly(rng, n, da), random_poly(rng, n, db)
        ta, tb = rng.choice(TWISTS), rng.choice(TWISTS)
        res.cases += 1
        if sq2(a * b, ta + tb) != sq2(a, ta) * b + a * sq2(b, tb):
            return res.fail(f"n={n} a={a} ({ta}) b={b} ({tb})")
    return res


def twist_identity(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("twist-identity")
    for n in range(1, n_max + 1):
        table = bslnc_table(n)
        th = GradedPolynomial.gen(table, "th", "F2")
        for j in range(q_max + 1):
            for m in chow_basis(n, j):
                x = GradedPolynomial.monomial(table, m, "F2")
                res.cases += 1
                if sq2(x, Twist.T) + sq2(x, Twist.O) != th * x:
                    return res.fail(f"n={n} x={x}")
    return res


def naturality(n_max: int = 6, q_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("naturality")
    for n in range(1, n_max + 1):
        table = bgln_table(n)
        for j in range(q_max + 1):
            for m in monomials_of_degree(table, j):
                x = GradedPolynomial.monomial(table, m, "F2")
                res.cases += 1
                if sq2(pullback_from_bgln(x)) != pullback_from_bgln(sq2_bgln(x)):
                    return res.fail(f"n={n} x={x}")
    return res


def rank_nullity(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("rank-nullity")
    for n in range(1, n_max + 1):
        for j in range(q_max + 1):
            for tw in TWISTS:
                res.cases += 1
                if sq2_matrix(n, j, tw).rank() + len(ker_sq2_vectors(n, j, tw)) != len(chow_basis(n, j)):
                    return res.fail(f"n={n} j={j} twist={tw}")
    return res


def kernel_lemmas(n_max: int = 6, q_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("kernel-lemmas")
    for n in range(2, n_max + 1):
        for tw in TWISTS:
            res.cases += 1
            check = kernel_subring_check(n, q_max, tw)
            if not check:
                return res.fail(f"n={n} twist={tw} degree {check.failed_degree}: {check.detail}")
    return res


# -- chow -----------------------------------------------------------------------


def localization(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("localization")
    for n in range(1, n_max + 1):
        for j in range(1, q_max + 1):
            res.cases += 1
            check = localization_cokernel_check(n, j)
            if not check:
                return res.fail(check.message)
    return res


# -- I-cohomology -----------------------------------------------------------------


def _atom_degree(atom: Atom, n: int) -> int:
    if atom.kind == "p":
        return 4 * atom.index
    if atom.kind == "e":
        return n
    return 1 + 2 * sum(atom.J) + int(atom.theta)


def random_atom(rng: random.Random, n: int) -> Atom:
    top = (n - 1) // 2
    kinds = ["b", "bT", "bT"] + (["p"] if top else []) + ["e"]
    kind = rng.choice(kinds)
    if kind == "p":
        return Atom.p(rng.randint(1, top))
    if kind == "e":
        return Atom.e()
    J = sorted(j for j in range(1, top + 1) if rng.random() < 0.5)
    if kind == "b" and not J and rng.random() < 0.8 and top:
        J = [rng.randint(1, top)]
    return Atom(kind, tuple(J), rng.random() < 0.3)


def random_named_pair(rng: random.Random, n: int, max_degree: int) -> tuple[list[Atom], list[Atom]]:
    while True:
        x, y = [], []
        total = 0
        for target in (x, y):
            for _ in range(rng.randint(1, 3)):
                atom = random_atom(rng, n)
                d = _atom_degree(atom, n)
                if total + d <= max_degree:
                    target.append(atom)
                    total += d
        if x and y and any(a.is_bockstein() or (a.kind == "e" and n % 2) for a in x + y):
            return x, y


def product_paths(n_max: int = 6, q_max: int = 12, samples: int = 500, seed: int = 0, **_) -> SuiteResult:
    """Closed product formulas against reduce-and-multiply in Ch."""
    res = SuiteResult("product-paths")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, n_max)
        x, y = random_named_pair(rng, n, q_max)
        res.cases += 1
        names = icoh_mul_formula(x, y, n=n)
        lhs = rho_of_names(names, n)
        rhs = atoms_rho(x, n) * atoms_rho(y, n)
        if lhs != rhs:
            show = lambda atoms: "*".join(map(str, atoms))
            return res.fail(f"n={n} ({show(x)}) * ({show(y)}): formula rho {lhs}, direct {rhs}")
        for name in names:
            if name.degree != sum(_atom_degree(a, n) for a in x + y):
                return res.fail(f"n={n} degree mismatch for {name}")
    return res


def torsion_dimension(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("torsion-dimension")
    for n in range(1, n_max + 1):
        for q in range(1, q_max + 1):
            for tw in TWISTS:
                res.cases += 1
                dim = torsion_basis(n, q, tw).dim
                rk = sq2_matrix(n, q - 1, tw).rank()
                nullity = len(chow_basis(n, q - 1)) - len(ker_sq2_vectors(n, q - 1, tw))
                if not dim == rk == nullity:
                    return res.fail(f"n={n} q={q} twist={tw}: dim {dim}, rank {rk}, {nullity}")
    return res


def rho_injective(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("rho-injective")
    for n in range(1, n_max + 1):
        for q in range(1, q_max + 1):
            for tw in TWISTS:
                tb = torsion_basis(n, q, tw)
                target = chow_basis(n, q)
                vecs = [vector_of(f, target) for f in tb.forms]
                res.cases += 1
                if linalg_f2.rank(vecs) != len(vecs):
                    return res.fail(f"n={n} q={q} twist={tw}: canonical forms dependent")
                for f in tb.forms:
                    if lift_torsion(f, tw).form != f:
                        return res.fail(f"n={n} q={q} twist={tw}: lift of {f} differs")
                if tb.names and rho_of_names(tb.names, n) != sum(tb.named_forms, GradedPolynomial.zero(bslnc_table(n), "F2")):
                    return res.fail(f"n={n} q={q} twist={tw}: name images inconsistent")
    return res


def bockstein_squared(n_max: int = 6, q_max: int = 12, **_) -> SuiteResult:
    res = SuiteResult("bockstein-squared")
    for n in range(1, n_max + 1):
        for j in range(q_max - 1):
            for tw in TWISTS:
                for m in chow_basis(n, j):
                    x = GradedPolynomial.monomial(bslnc_table(n), m, "F2")
                    res.cases += 1
                    if bockstein(bockstein(x, tw).form, tw, degree=j + 1).form:
                        return res.fail(f"n={n} x={x} twist={tw}")
    return res


def _random_icoh(rng: random.Random, n: int, q: int, tw: Twist) -> ICohClass:
    tb = torsion_basis(n, q, tw)
    form = GradedPolynomial.zero(bslnc_table(n), "F2")
    for f in tb.forms:
        if rng.random() < 0.5:
            form = form + f
    free = FreePart(witt_table(n), REAL)
    if tw is Twist.O:
        free = FreePart(witt_table(n), REAL, {m: rng.randint(-3, 3) for m in free_basis(n, q)})
    return ICohClass(n, q, tw, REAL, free, form)


def icoh_ring(n_max: int = 5, q_max: int = 10, samples: int = 200, seed: int = 0, **_) -> SuiteResult:
    """Associativity, commutativity and I(k)-annihilation of torsion."""
    res = SuiteResult("icoh-ring")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        qs = [rng.randint(0, q_max // 3) for _ in range(3)]
        x, y, z = (_random_icoh(rng, n, q, rng.choice(TWISTS)) for q in qs)
        res.cases += 1
        if (x * y) * z != x * (y * z):
            return res.fail(f"associativity n={n}: {x} | {y} | {z}")
        if x * y != y * x:
            return res.fail(f"commutativity n={n}: {x} | {y}")
        t = ICohClass(x.n, x.q, x.twist, REAL, torsion=x.torsion)
        if t.scale(2):
            return res.fail(f"2 * {t} is nonzero")
    return res


# -- Chow-Witt --------------------------------------------------------------------


def chw_agreement(n_max: int = 5, q_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("chw-agreement")
    for n in range(1, n_max + 1):
        for j in range(q_max + 1):
            for tw in TWISTS:
                for model in (REAL, QUADCLOSED):
                    res.cases += 1
                    ok, msg = agreement_check(n, j, tw, model)
                    if not ok:
                        return res.fail(msg)
    return res


def pontryagin(n_max: int = 8, **_) -> SuiteResult:
    res = SuiteResult("pontryagin")
    for n in range(1, n_max + 1):
        table = bslnc_table(n)
        for i in range(1, (n - 1) // 2 + 1):
            res.cases += 1
            c = GradedPolynomial.gen(table, f"c{2 * i}", "F2")
            if mod2_reduce(pontryagin_chow_part(n, i)) != c * c:
                return res.fail(f"n={n} i={i}")
    return res


def cw_generators_for(n: int) -> list[ChowWittClass]:
    gens = [theta_euler(n)]
    gens += [pontryagin_class(n, i) for i in range(1, (n - 1) // 2 + 1)]
    if n % 2 == 0:
        gens.append(euler_class(n))
    for J in admissible_sets(n):
        if J:
            gens.append(bockstein_class(n, Twist.O, J))
        gens.append(bockstein_class(n, Twist.T, J))
    table = bslnc_table(n)
    gens.append(hyperbolic(GradedPolynomial.gen(table, "th")))
    if n >= 2:
        gens.append(hyperbolic(GradedPolynomial.gen(table, "c2")))
    return gens


def cw_closure(n_max: int = 5, q_max: int = 10, samples: int = 200, seed: int = 0, **_) -> SuiteResult:
    res = SuiteResult("cw-closure")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, n_max)
        gens = cw_generators_for(n)
        prod = ChowWittClass.one(n)
        for _ in range(rng.randint(1, 4)):
            g = rng.choice(gens)
            if prod.degree + g.degree > q_max:
                break
            prod = prod * g
        res.cases += 1
        try:
            make_class(prod.i_part, prod.ch_part)
        except ValueError as exc:
            return res.fail(f"n={n}: {prod} ({exc})")
    return res


def lift_independence(n_max: int = 6, **_) -> SuiteResult:
    """Any other integral lift of Sq2_L(c_J) differs from the 0/1 lift by a hyperbolic class."""
    res = SuiteResult("lift-independence")
    for n in range(2, n_max + 1):
        for J in admissible_sets(n):
            for tw in TWISTS:
                if not J and tw is Twist.O:
                    continue
                base = bockstein_class(n, tw, J)
                image = sq2(cbar_J(n, J), tw)
                other = zero_one_lift(image).map_coefficients(lambda c: c * 3, "Z")
                if image:
                    m = next(iter(chow_basis(n, image.degree())))
                    other = other + GradedPolynomial.monomial(bslnc_table(n), m) * 2
                alt = make_class(base.i_part, other)
                diff = alt - base
                res.cases += 1
                if diff.i_part or any(c % 2 for c in diff.ch_part.terms.values()):
                    return res.fail(f"n={n} J={sorted(J)} twist={tw}")
                half = diff.ch_part.map_coefficients(lambda c: c // 2, "Z")
                if hyperbolic(half, tw, degree=base.degree) != diff:
                    return res.fail(f"n={n} J={sorted(J)} twist={tw}: difference is not H(x)")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "sq2-nilpotent": sq2_nilpotent,
    "derivation": derivation,
    "twist-identity": twist_identity,
    "naturality": naturality,
    "rank-nullity": rank_nullity,
    "kernel-lemmas": kernel_lemmas,
    "localization": localization,
    "product-paths": product_paths,
    "torsion-dimension": torsion_dimension,
    "rho-injective": rho_injective,
    "bockstein-squared": bockstein_squared,
    "icoh-ring": icoh_ring,
    "chw-agreement": chw_agreement,
    "pontryagin": pontryagin,
    "cw-closure": cw_closure,
    "lift-independence": lift_independence,
}


def run_suite(name: str, n_max: int | None = None, q_max: int | None = None, **kwargs) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(nm)
        args = dict(kwargs)
        if n_max is not None:
            args["n_max"] = n_max
        if q_max is not None:
            args["q_max"] = q_max
        out.append(SUITES[nm](**args))
    return out


__all__ = ["SUITES", "SuiteResult", "run_suite"]
