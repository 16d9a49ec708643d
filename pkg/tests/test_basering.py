import pytest
from hypothesis import given, strategies as st

from cwcalc.basering import QUADCLOSED, REAL, SYMBOLIC, UnsupportedError, WittModel, in_fundamental_ideal, witt_reduce


@pytest.mark.parametrize(
    "model, w, expected",
    [(REAL, 2, 0), (REAL, 3, 1), (QUADCLOSED, 1, 1), (REAL, -5, 1)],
)
def test_witt_reduce_values(model, w, expected):
    assert witt_reduce(model, w) == expected


@pytest.mark.parametrize("model, w, expected", [(REAL, 4, True), (REAL, 1, False), (QUADCLOSED, 0, True)])
def test_fundamental_ideal_membership(model, w, expected):
    assert in_fundamental_ideal(model, w) is expected


def test_symbolic_refuses_arithmetic():
    with pytest.raises(UnsupportedError, match="unsupported on symbolic Witt model"):
        witt_reduce(SYMBOLIC, 1)
    with pytest.raises(UnsupportedError):
        in_fundamental_ideal(SYMBOLIC, 0)
    with pytest.raises(UnsupportedError):
        SYMBOLIC.add(1, 1)
    with pytest.raises(UnsupportedError):
        SYMBOLIC.element(2)
    assert SYMBOLIC.reduce_unit(1) == 1
    assert SYMBOLIC.mul(1, 1) == 1


def test_model_aliases():
    assert WittModel.from_name("real-closed") == REAL
    assert WittModel.from_name("quad-closed") == QUADCLOSED
    with pytest.raises(ValueError):
        WittModel.from_name("padic")


def test_quadclosed_is_f2():
    assert QUADCLOSED.add(1, 1) == 0
    assert QUADCLOSED.neg(1) == 1
    assert QUADCLOSED.gw_z_rank() == 1
    assert REAL.gw_z_rank() == 2


models = st.sampled_from([REAL, QUADCLOSED])


@given(models, st.integers(-50, 50), st.integers(-50, 50))
def test_reduction_is_ring_homomorphism(model, a, b):
    a, b = model.element(a), model.element(b)
    assert witt_reduce(model, model.add(a, b)) == (witt_reduce(model, a) + witt_reduce(model, b)) % 2
    assert witt_reduce(model, model.mul(a, b)) == witt_reduce(model, a) * witt_reduce(model, b)


@given(models, st.integers(-50, 50), st.integers(-50, 50))
def test_fundamental_ideal_is_ideal(model, a, b):
    a, b = model.element(a), model.element(b)
    if in_fundamental_ideal(model, a) or in_fundamental_ideal(model, b):
        assert in_fundamental_ideal(model, model.mul(a, b))


@given(models, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_ring_axioms(model, a, b, c):
    a, b, c = (model.element(x) for x in (a, b, c))
    assert model.add(a, model.add(b, c)) == model.add(model.add(a, b), c)
    assert model.mul(a, model.add(b, c)) == model.add(model.mul(a, b), model.mul(a, c))
    assert model.add(a, model.neg(a)) == 0
    assert model.mul(a, model.one()) == a
