from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errors import MalformedInterval, ModelMismatch, PreconditionViolated
from lca_core import check_axioms, way_below
from region_models import (
    EMPTY,
    INFINITY,
    INTERVAL_MODEL,
    NAT_MODEL,
    REALS,
    NatRegion,
    Point,
    cluster_membership,
    interpolate_witness,
    interval,
    normalize,
    principal_member,
    sample_region,
)

nat_regions = st.builds(
    NatRegion,
    st.sampled_from(["finite", "cofinite"]),
    st.lists(st.integers(min_value=0, max_value=12), max_size=5).map(lambda xs: tuple(sorted(set(xs)))),
)


@given(nat_regions, nat_regions, nat_regions)
def test_nat_regions_form_a_boolean_algebra(a, b, c):
    N = NAT_MODEL
    assert N.complement(N.complement(a)) == a
    assert N.complement(N.join(a, b)) == N.meet(N.complement(a), N.complement(b))
    assert N.meet(a, N.join(b, c)) == N.join(N.meet(a, b), N.meet(a, c))
    assert N.leq(N.meet(a, b), a)


def test_nat_operations():
    N = NAT_MODEL
    assert N.join(NatRegion.finite([1]), NatRegion.cofinite([1, 2])) == NatRegion.cofinite([2])
    assert N.meet(NatRegion.finite([1, 5]), NatRegion.cofinite([1])) == NatRegion.finite([5])
    assert N.bounded(NatRegion.finite([3]))
    assert not N.bounded(N.one())
    assert str(NatRegion.finite([0])) == "{finite: [0]}"


def test_interval_normalization():
    assert normalize([(0, 1), (1, 2)]) == interval(0, 2)
    assert normalize([(0, 0)]) == EMPTY
    assert normalize([(2, 3), (0, 1)]).intervals == ((0, 1), (2, 3))
    with pytest.raises(MalformedInterval):
        normalize([(2, 1)])


def test_interval_literals():
    M = INTERVAL_MODEL
    assert M.render(M.parse("[0,1] + [2,3]")) == "[0,1] + [2,3]"
    assert M.parse("(-inf,0]") == interval(None, 0)
    assert M.render(interval(Fraction(1, 2), 1)) == "[1/2,1]"
    with pytest.raises(ValueError):
        M.parse("(0,1]")


def test_interval_meet_is_regularized():
    M = INTERVAL_MODEL
    assert M.meet(interval(0, 1), interval(1, 2)) == EMPTY
    assert M.contact(interval(0, 1), interval(1, 2))
    assert M.complement(interval(0, 1)) == normalize([(None, 0), (1, None)])
    assert way_below(M, interval(0, 1), interval(-1, 2))
    assert not way_below(M, interval(0, 1), interval(0, 2))


def test_touching_point_trace_is_not_a_filter():
    left, right = interval(0, 1), interval(1, 2)
    sigma = Point(1)
    assert cluster_membership(INTERVAL_MODEL, sigma, left)
    assert cluster_membership(INTERVAL_MODEL, sigma, right)
    assert INTERVAL_MODEL.meet(left, right) == INTERVAL_MODEL.zero()


def test_point_at_infinity_membership():
    assert cluster_membership(INTERVAL_MODEL, INFINITY, interval(0, None))
    assert not cluster_membership(INTERVAL_MODEL, INFINITY, interval(0, 1))
    assert cluster_membership(NAT_MODEL, INFINITY, NatRegion.cofinite([4]))


def test_principal_members():
    assert principal_member(INTERVAL_MODEL, interval(-1, 2), interval(0, 1))
    assert not principal_member(INTERVAL_MODEL, REALS, interval(0, None))


def test_interpolation_witness():
    b = interpolate_witness(INTERVAL_MODEL, interval(0, 1), interval(-1, 2))
    assert way_below(INTERVAL_MODEL, interval(0, 1), b)
    assert way_below(INTERVAL_MODEL, b, interval(-1, 2))
    with pytest.raises(PreconditionViolated):
        interpolate_witness(INTERVAL_MODEL, interval(0, None), REALS)


def test_models_reject_foreign_regions():
    with pytest.raises(ModelMismatch):
        NAT_MODEL.join(interval(0, 1), NAT_MODEL.zero())


def test_sample_streams_are_seeded():
    assert sample_region(INTERVAL_MODEL, 11, index=20) == sample_region(INTERVAL_MODEL, 11, index=20)
    assert sample_region(NAT_MODEL, 3, index=0) == NAT_MODEL.zero()


@pytest.mark.parametrize("model", [NAT_MODEL, INTERVAL_MODEL], ids=["nat", "interval"])
@pytest.mark.parametrize("suite", ["CA", "LCA"])
def test_stock_models_pass_sampled_suites(model, suite, sampled_1000):
    report = check_axioms(model, suite, sampled_1000)
    assert report.status == "holds", [(v.axiom, v.status, v.rendered) for v in report.verdicts]
    assert report.samples_used == 1000


def test_interval_model_is_connected(sampled_1000):
    assert check_axioms(INTERVAL_MODEL, "CON", sampled_1000).passed


def test_cofinite_model_is_not_connected(sampled_1000):
    report = check_axioms(NAT_MODEL, "CON", sampled_1000)
    verdict = report.verdict("CON")
    assert verdict.status == "fails"
    assert verdict.rendered == ["{finite: [0]}"]
