import pytest

from duality_engine import (
    cluster_from_trace,
    dualize,
    lambda_all,
    lambda_g,
    render_cluster,
    roundtrip_algebra,
    t_map,
    trace,
    verify_realization,
)
from finite_models import diagonal_structure, sweep_structures
from finite_spaces import discrete_space
from lca_core import passes


@pytest.mark.parametrize("atoms", [1, 2, 3, 4])
def test_roundtrip_on_every_lca(atoms):
    full = (1 << atoms) - 1
    checked = 0
    for S in sweep_structures(atoms):
        if S.bound_mask != full or not passes(S, "LCA"):
            continue
        report = roundtrip_algebra(S)
        assert report.verdict, report.issues
        assert report.dual_points == atoms
        checked += 1
    assert checked >= 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_discrete_spaces_come_back(n):
    X = discrete_space([f"x{i}" for i in range(n)], name=f"D{n}")
    report = t_map(X)
    assert report.guaranteed
    assert report.bijective
    assert report.homeomorphism


def test_non_hausdorff_spaces_are_not_guaranteed(sierpinski):
    report = t_map(sierpinski)
    assert not report.guaranteed
    assert report.homeomorphism is None
    assert "NotGuaranteed" in report.note


def test_non_lca_roundtrip_is_declined(rho_l2):
    report = roundtrip_algebra(rho_l2)
    assert report.declined
    assert not report.verdict
    assert "BC3" in report.reason


def test_dual_with_a_point_at_infinity():
    S = diagonal_structure(2, bound_atoms=[0])
    dual = dualize(S)
    assert not dual.lca_passed
    assert len(dual.clusters) == 2
    assert len(dual.bounded_points) == 1
    assert lambda_g(S, 2) == frozenset()
    assert len(lambda_all(S, 2)) == 1


def test_diagonal_dual_is_discrete(rho_s3):
    dual = dualize(rho_s3)
    assert dual.lca_passed
    assert len(dual.topology.opens) == 8
    assert lambda_g(rho_s3, 5) == frozenset({0, 2})


def test_traces_recover_clusters(rho_s3):
    dual = dualize(rho_s3)
    for i in dual.bounded_points:
        sigma = dual.cluster(i)
        assert cluster_from_trace(rho_s3, trace(rho_s3, sigma)) == sigma


def test_cluster_rendering(rho_s2):
    dual = dualize(rho_s2)
    assert [render_cluster(rho_s2, dual.cluster(i)) for i in dual.points] == ["<{p}>", "<{q}>"]


def test_realization(rho_s3):
    report = verify_realization(rho_s3)
    assert report.verdict, report.issues


def test_realization_declines_non_lca(rho_l2):
    assert verify_realization(rho_l2).declined
