import random

import pytest
from hypothesis import given, settings, strategies as st

from cwcalc.basering import QUADCLOSED, REAL, SYMBOLIC, UnsupportedError
from cwcalc.checks import random_named_pair
from cwcalc.chow import InputError, chow_basis
from cwcalc.icohomology import (
    Atom,
    ConsistencyError,
    FreePart,
    ICohClass,
    NotTorsionError,
    TorsionMonomialName,
    atoms_rho,
    bockstein,
    free_basis,
    icoh_group,
    icoh_mul_formula,
    lift_torsion,
    restrict_to_bsln,
    rho,
    rho_of_names,
    torsion_basis,
    witt_group,
    witt_table,
)
from cwcalc.polynomial import bslnc_table
from cwcalc.steenrod import Twist, ker_sq2_vectors, sq2_matrix
from helpers import f2

GOLDEN_O = {0: (1, 0), 1: (0, 0), 2: (0, 1), 3: (0, 1), 4: (2, 2)}
GOLDEN_T = {0: 0, 1: 1, 2: 0, 3: 2, 4: 1}


def tors(n, *monomials, twist=Twist.O):
    return ICohClass.from_torsion(lift_torsion(f2(n, *monomials), twist))


def bT1(n=4):
    return ICohClass.from_torsion(bockstein(f2(n, "1"), Twist.T))


def b(n, *monomials, twist=Twist.O):
    return ICohClass.from_torsion(bockstein(f2(n, *monomials), twist))


@pytest.mark.parametrize("q", range(5))
def test_bsl4c_table(q):
    r = icoh_group(4, q, Twist.O)
    assert (r.w_rank, r.torsion_rank) == GOLDEN_O[q]
    r = icoh_group(4, q, Twist.T)
    assert (r.w_rank, r.torsion_rank) == (0, GOLDEN_T[q])


def test_bsl4c_names():
    assert icoh_group(4, 2).basis == ["bT(1)^2"]
    assert icoh_group(4, 3).basis == ["b(c2)"]
    assert icoh_group(4, 3, Twist.T).basis == ["bT(1)^3", "bT(c2)"]
    assert icoh_group(4, 4).basis[:2] == ["p2", "e4"]
    assert icoh_group(4, 4, Twist.T).basis == ["bT(1)*b(c2)"]
    assert icoh_group(4, 0).basis == ["1"]


def test_rho_examples():
    assert rho(ICohClass.free_generator(4, "p2")) == f2(4, "c2^2")
    assert rho(ICohClass.free_generator(4, "e4")) == f2(4, "c4")
    assert rho(bT1() * bT1()) == f2(4, "th^2")


def test_rho_symbolic_model():
    x = ICohClass.free_generator(4, "p2", SYMBOLIC)
    assert rho(x) == f2(4, "c2^2")
    with pytest.raises(UnsupportedError):
        x + x


def test_bockstein_examples():
    assert b(4, "c2").torsion == f2(4, "c3")
    assert bT1().torsion == f2(4, "th")
    assert not bockstein(f2(4, "th^2"), Twist.O).form


def test_lift_examples():
    assert lift_torsion(f2(4, "th"), Twist.T).form == f2(4, "th")
    assert lift_torsion(f2(4, "c3"), Twist.O).form == bockstein(f2(4, "c2")).form
    with pytest.raises(NotTorsionError) as err:
        lift_torsion(f2(4, "c2"), Twist.O)
    assert err.value.residual


def test_product_examples():
    lhs = b(4, "c2", twist=Twist.T) * b(4, "c2", twist=Twist.T)
    rhs = b(4, "c2") * b(4, "c2") + bT1() * bT1() * ICohClass.free_generator(4, "p2")
    assert lhs == rhs
    assert rho(ICohClass.free_generator(4, "p2") * bT1()) == f2(4, "th*c2^2")
    assert ICohClass.one(4) * b(4, "c2") == b(4, "c2")


def test_product_of_invalid_parts_is_consistency_error():
    bad = ICohClass(4, 2, Twist.O, torsion=f2(4, "c2"), check=False)
    with pytest.raises(ConsistencyError):
        bad * ICohClass.one(4)


def test_twisted_free_part_rejected():
    with pytest.raises(InputError):
        ICohClass(4, 4, Twist.T, free=FreePart(witt_table(4), REAL, {witt_table(4).unit("p2"): 1}))


def test_torsion_not_in_image_rejected():
    with pytest.raises(NotTorsionError):
        ICohClass(4, 2, Twist.O, torsion=f2(4, "c2"))


def names(d):
    return {str(k) for k in d}


def test_formula_examples():
    got = icoh_mul_formula([Atom.b(1, 2)], [Atom.bT(1)], n=5)
    assert names(got) == {"b(c2)*bT(c2*c4)", "bT(1)*p2*b(c4)"}
    got = icoh_mul_formula([Atom.bT(1)], [Atom.bT()], n=4)
    assert names(got) == {"bT(1)*bT(c2)"}
    assert names(icoh_mul_formula([Atom.b(1, theta=True)], n=4)) == {"bT(1)*bT(c2)"}
    assert icoh_mul_formula([Atom.b(1)], [Atom.b()], n=4) == {}
    assert names(icoh_mul_formula([Atom.bT(1)], [Atom.bT(1)], n=4)) == {"b(c2)^2", "bT(1)^2*p2"}


def test_formula_relation_r2():
    got = icoh_mul_formula([Atom.e()], [Atom.bT()], n=5)
    assert names(got) == {"bT(1)*b(c4)"}


def test_formula_requires_bockstein():
    with pytest.raises(InputError):
        icoh_mul_formula([Atom.p(1)], n=5)


def test_formula_matches_rho_products():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 6)
        x, y = random_named_pair(rng, n, 12)
        assert rho_of_names(icoh_mul_formula(x, y, n=n), n) == atoms_rho(x, n) * atoms_rho(y, n)


def test_torsion_basis_examples():
    tb = torsion_basis(4, 2, Twist.O)
    assert tb.dim == 1 and tb.forms == [f2(4, "th^2")] and [str(x) for x in tb.names] == ["bT(1)^2"]
    tb = torsion_basis(4, 3, Twist.T)
    assert tb.dim == 2 and [str(x) for x in tb.names] == ["bT(1)^3", "bT(c2)"]
    assert torsion_basis(4, 1, Twist.O).dim == 0


def test_names_include_euler_factors():
    # twisted degree 5 for n = 4 needs bT(1)*e4
    tb = torsion_basis(4, 5, Twist.T)
    assert tb.names_complete
    assert "bT(1)*e4" in [str(x) for x in tb.names]


def test_name_degree_and_twist():
    nm = TorsionMonomialName(5, a=1, m=(1, 0), r=0, k=(0, 1), F=("bT", (1, 2)))
    assert nm.degree == 1 + 4 + 5 + 1 + 2 * 3
    assert nm.twist is Twist.O
    assert str(nm) == "bT(1)*p2*b(c4)*bT(c2*c4)"
    with pytest.raises(InputError):
        TorsionMonomialName(5, m=(0, 0), k=(0, 0), F=("b", (1,)))


def test_witt_group_examples():
    assert witt_group(4, 4).w_rank == 2
    assert witt_group(4, 3, Twist.T).w_rank == 0
    r = witt_group(5, 8)
    assert r.w_rank == 2 and r.basis == ["p2^2", "p4"]


def test_restrict_examples():
    assert restrict_to_bsln(bT1() * bT1()).is_zero()
    assert restrict_to_bsln(b(4, "c2")).torsion == f2(4, "c3")
    x = b(4, "c2", twist=Twist.T)
    assert restrict_to_bsln(x * x) == restrict_to_bsln(b(4, "c2") * b(4, "c2"))
    with pytest.raises(InputError):
        restrict_to_bsln(bT1())


def test_odd_euler_is_bockstein():
    assert ICohClass.free_generator(5, "e5") == b(5, "c4")


def test_scalar_kills_torsion():
    x = b(4, "c2")
    assert x.scale(2).is_zero()
    assert x.scale(3) == x
    y = ICohClass.free_generator(4, "p2", QUADCLOSED)
    assert (y + y).is_zero()


@pytest.mark.parametrize("n", range(1, 7))
def test_torsion_dimension_identity(n):
    for q in range(1, 13):
        for tw in Twist:
            dim = torsion_basis(n, q, tw).dim
            assert dim == sq2_matrix(n, q - 1, tw).rank()
            assert dim == len(chow_basis(n, q - 1)) - len(ker_sq2_vectors(n, q - 1, tw))


@pytest.mark.parametrize("n", range(1, 7))
def test_lift_is_identity_on_basis(n):
    for q in range(1, 13):
        for tw in Twist:
            for form in torsion_basis(n, q, tw).forms:
                assert lift_torsion(form, tw).form == form


@pytest.mark.parametrize("n", range(1, 7))
def test_bockstein_twice_is_zero(n):
    for j in range(10):
        for tw in Twist:
            for m in chow_basis(n, j):
                x = f2(n, bslnc_table(n).format_monomial(m))
                assert not bockstein(bockstein(x, tw).form, tw, degree=j + 1).form


@st.composite
def icoh_classes(draw, n):
    q = draw(st.integers(0, 4))
    tw = draw(st.sampled_from(list(Twist)))
    tb = torsion_basis(n, q, tw)
    picks = draw(st.lists(st.booleans(), min_size=tb.dim, max_size=tb.dim))
    form = sum((f for f, p in zip(tb.forms, picks) if p), f2(n))
    free = FreePart(witt_table(n), REAL)
    if tw is Twist.O:
        monos = free_basis(n, q)
        coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(monos), max_size=len(monos)))
        free = FreePart(witt_table(n), REAL, dict(zip(monos, coeffs)))
    return ICohClass(n, q, tw, REAL, free, form)


@st.composite
def triples(draw):
    n = draw(st.integers(1, 5))
    return [draw(icoh_classes(n)) for _ in range(3)]


@settings(max_examples=100, deadline=None)
@given(triples())
def test_ring_laws(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if x.q == y.q and x.twist == y.twist:
        assert (x + y) * z == x * z + y * z


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(icoh_classes))
def test_fundamental_ideal_kills_torsion(x):
    t = ICohClass(x.n, x.q, x.twist, REAL, torsion=x.torsion)
    assert t.scale(2).is_zero()
