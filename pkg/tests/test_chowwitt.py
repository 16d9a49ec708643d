import pytest

from cwcalc.basering import QUADCLOSED, REAL, SYMBOLIC, UnsupportedError
from cwcalc.chow import InputError, mod2_reduce
from cwcalc.chowwitt import (
    ChowWittClass,
    IncompatibleError,
    agreement_check,
    bockstein_class,
    cw_generators,
    cw_group,
    euler_class,
    hyperbolic,
    make_class,
    pontryagin_chow_part,
    pontryagin_class,
    theta_euler,
)
from cwcalc.checks import cw_closure, lift_independence
from cwcalc.icohomology import ICohClass, bockstein, rho
from cwcalc.steenrod import Twist
from helpers import f2, zpoly


def test_make_class_examples():
    e4 = make_class(ICohClass.free_generator(4, "e4"), zpoly(4, {"c4": 1}))
    assert e4.degree == 4 and e4.twist is Twist.O
    th = make_class(ICohClass.from_torsion(bockstein(f2(4, "1"), Twist.T)), zpoly(4, {"th": 1}))
    assert th.twist is Twist.T
    make_class(ICohClass.free_generator(4, "p2"), zpoly(4, {"c2^2": 1}))
    with pytest.raises(IncompatibleError) as err:
        make_class(ICohClass.free_generator(4, "p2"), zpoly(4, {"c4": 1}))
    assert err.value.residual == f2(4, "c2^2", "c4")


def test_products():
    e = theta_euler(4)
    sq = e * e
    assert sq.twist is Twist.O
    assert sq.i_part == ICohClass.from_torsion(bockstein(f2(4, "1"), Twist.T)) ** 2
    assert sq.ch_part == zpoly(4, {"th^2": 1})
    h1 = hyperbolic(zpoly(4, {"1": 1}))
    assert h1 * h1 == hyperbolic(zpoly(4, {"1": 2}))
    x = pontryagin_class(4, 1)
    assert ChowWittClass.one(4) * x == x


def test_pontryagin_examples():
    assert pontryagin_class(4, 1).ch_part == zpoly(4, {"c2^2": 1, "c4": 2, "th*c3": -4})
    assert pontryagin_chow_part(5, 2) == zpoly(5, {"c4^2": 1, "c3*c5": -2})
    assert mod2_reduce(pontryagin_class(4, 1).ch_part) == rho(ICohClass.free_generator(4, "p2"))
    with pytest.raises(InputError):
        pontryagin_class(4, 2)


@pytest.mark.parametrize("n", range(3, 9))
def test_pontryagin_compatibility(n):
    for i in range(1, (n - 1) // 2 + 1):
        assert mod2_reduce(pontryagin_chow_part(n, i)) == f2(n, f"c{2 * i}^2")


def test_euler_classes():
    e = euler_class(4)
    assert e.ch_part == zpoly(4, {"c4": 1})
    t = theta_euler(6)
    assert (t.degree, t.twist, t.ch_part) == (1, Twist.T, zpoly(6, {"th": 1}))
    with pytest.raises(InputError, match=r"b\(c4\)"):
        euler_class(5)


def test_bockstein_classes():
    x = bockstein_class(4, Twist.O, {1})
    assert x.ch_part == zpoly(4, {"c3": 1})
    assert bockstein_class(4, Twist.T, ()) == theta_euler(4)
    y = bockstein_class(4, Twist.T, {1})
    assert y.ch_part == zpoly(4, {"th*c2": 1, "c3": 1})
    with pytest.warns(UserWarning):
        z = bockstein_class(4, Twist.O, ())
    assert z.is_zero()
    with pytest.raises(InputError):
        bockstein_class(4, Twist.O, {2})


def test_hyperbolic():
    h = hyperbolic(zpoly(4, {"1": 1}))
    assert h.degree == 0 and h.ch_part == zpoly(4, {"1": 2}) and h.i_part.is_zero()
    assert hyperbolic(zpoly(4, {"c2": 1})) * euler_class(4) == hyperbolic(zpoly(4, {"c2*c4": 1}))
    assert hyperbolic(zpoly(4, {})).is_zero()


def test_projection_identities():
    for x in [zpoly(4, {"c2": 3}), zpoly(4, {"th^3": 1, "th*c2": -2})]:
        h = hyperbolic(x, Twist.T)
        assert h.ch_part == x * 2 and h.i_part.is_zero()
    a, b = pontryagin_class(4, 1), bockstein_class(4, Twist.T, {1})
    assert (a * b).ch_part == a.ch_part * b.ch_part


def test_group_examples():
    r = cw_group(4, 0, Twist.O)
    assert (r.gw_rank, r.z_rank) == (1, 0) and r.summary() == "GW^1"
    r = cw_group(4, 2, Twist.O)
    assert (r.gw_rank, r.z_rank) == (0, 2)
    inst = cw_group(4, 2, Twist.O, "instantiated", REAL)
    assert inst.z_rank == 2 and not inst.two_torsion
    assert inst.basis == ["(bT(1)^2, th^2)", "(0, 2*c2)"]
    r = cw_group(4, 1, Twist.T)
    assert (r.gw_rank, r.z_rank) == (0, 1)
    gens = cw_generators(4, 1, Twist.T)
    assert gens == [theta_euler(4)]


def test_degree0_instantiated_is_gw():
    # GW(R) = Z^2 generated by <1> = (1, 1) and the hyperbolic form (0, 2)
    assert cw_group(4, 0, Twist.O, "instantiated", REAL).basis == ["(1, 1)", "(0, 2)"]
    assert cw_group(4, 0, Twist.O, "instantiated", QUADCLOSED).z_rank == 1


def test_symbolic_instantiated_refused():
    with pytest.raises(UnsupportedError):
        cw_group(4, 2, Twist.O, "instantiated", SYMBOLIC)


@pytest.mark.parametrize("n", range(1, 6))
def test_symbolic_and_instantiated_agree(n):
    for j in range(11):
        for tw in Twist:
            for model in (REAL, QUADCLOSED):
                ok, msg = agreement_check(n, j, tw, model)
                assert ok, msg


def test_generators_are_compatible_pairs():
    for n in range(2, 6):
        for j in range(7):
            for tw in Twist:
                for g in cw_generators(n, j, tw):
                    make_class(g.i_part, g.ch_part)


def test_closure_under_products():
    r = cw_closure(n_max=5, q_max=10, samples=200)
    assert r.ok, r.counterexample


def test_lift_independence():
    r = lift_independence(n_max=6)
    assert r.ok, r.counterexample
