from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from described_maps import (
    ABSOLUTE,
    DOUBLE,
    HAT,
    IDENTITY,
    NAT_IDENTITY,
    compose_maps,
    constant_pl,
    evaluate,
    is_proper,
    nat_map,
    phi_from_map,
    pl_map,
)
from errors import ModelMismatch
from region_models import EMPTY, REALS, NatRegion, interval, normalize

STOCK = [IDENTITY, DOUBLE, ABSOLUTE, HAT, constant_pl(0)]

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=16)


def test_identity_fixes_regions():
    assert phi_from_map(IDENTITY, interval(0, 1)) == interval(0, 1)


def test_double_halves_regions():
    assert phi_from_map(DOUBLE, interval(0, 2)) == interval(0, 1)


def test_absolute_value_mirrors():
    assert phi_from_map(ABSOLUTE, interval(1, 3)) == normalize([(-3, -1), (1, 3)])


def test_constant_pieces_use_the_interior():
    zero = constant_pl(0)
    assert phi_from_map(zero, interval(-1, 1)) == REALS
    # 0 lies in [0,1] but not in its interior
    assert phi_from_map(zero, interval(0, 1)) == EMPTY


def test_hat_pulls_back_both_flanks():
    assert phi_from_map(HAT, interval(Fraction(1, 2), 2)) == interval(Fraction(-1, 2), Fraction(1, 2))


def test_properness():
    assert [is_proper(f) for f in STOCK] == [True, True, True, False, False]
    assert is_proper(NAT_IDENTITY)
    assert not is_proper(nat_map(constant=3))


def test_nat_preimages():
    f = nat_map([5], shift=1)
    assert evaluate(f, 0) == 5
    assert evaluate(f, 4) == 5
    assert phi_from_map(f, NatRegion.finite([5])) == NatRegion.finite([0, 4])
    assert phi_from_map(nat_map(constant=3), NatRegion.finite([3])) == NatRegion.cofinite([])
    assert phi_from_map(f, NatRegion.cofinite([5])) == NatRegion.cofinite([0, 4])


def test_maps_reject_foreign_regions():
    with pytest.raises(ModelMismatch):
        phi_from_map(NAT_IDENTITY, interval(0, 1))
    with pytest.raises(ModelMismatch):
        phi_from_map(IDENTITY, NatRegion.finite([0]))


def test_map_validation():
    with pytest.raises(ValueError):
        pl_map([(1, 0), (0, 0)])
    with pytest.raises(ValueError):
        nat_map([1], shift=1, constant=2)


@given(st.sampled_from(STOCK), st.sampled_from(STOCK), rationals)
def test_composite_pl_map_agrees_pointwise(g, f, x):
    assert compose_maps(g, f).evaluate(x) == g.evaluate(f.evaluate(x))


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=40))
def test_composite_nat_map_agrees_pointwise(k, c, n):
    f = nat_map([2, 0], shift=k)
    g = nat_map([1], constant=c) if k % 2 else nat_map([3, 1, 4], shift=1)
    assert compose_maps(g, f).evaluate(n) == g.evaluate(f.evaluate(n))
