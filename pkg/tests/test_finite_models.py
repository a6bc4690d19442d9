import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import AtomCountOutOfRange, BoundedTop, EmptyCandidate, InvalidAdjacency, NotAnAtom, TooLargeForBrute
from finite_models import (
    cluster_from_ultrafilter,
    cluster_properties,
    diagonal_structure,
    enumerate_clusters,
    is_cluster,
    make_finite_lca,
    random_structure,
    sigma_infinity,
    sweep_structures,
)
from lca_core import QuantifierStrategy, check_axioms, passes
from region_models import INFINITY, NAT_MODEL


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(InvalidAdjacency, match="asymmetric"):
        make_finite_lca(2, [[True, True], [False, True]])


def test_irreflexive_adjacency_is_rejected():
    with pytest.raises(InvalidAdjacency, match="reflexive"):
        make_finite_lca(2, [[False, False], [False, True]])


def test_atom_count_is_capped():
    with pytest.raises(AtomCountOutOfRange):
        make_finite_lca(6, np.eye(6, dtype=bool))


def test_element_literals(rho_s3):
    assert rho_s3.parse_element("{p,q}") == 3
    assert rho_s3.parse_element("0") == 0
    assert rho_s3.parse_element("1") == 7
    assert rho_s3.render(5) == "{p,r}"
    with pytest.raises(ValueError):
        rho_s3.parse_element("{z}")


def test_contact_extends_the_atom_relation():
    S = make_finite_lca(3, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert S.contact(1, 2)
    assert not S.contact(1, 4)
    assert S.contact(5, 2)


@pytest.mark.parametrize("atoms", [1, 2, 3, 4])
def test_every_adjacency_gives_a_contact_algebra(atoms):
    full = (1 << atoms) - 1
    checked = 0
    for S in sweep_structures(atoms):
        if S.bound_mask != full:
            continue
        report = check_axioms(S, "CA", QuantifierStrategy.exhaustive())
        assert report.passed, (S.adjacency, report.failed_axioms())
        checked += 1
    assert checked == 2 ** (atoms * (atoms - 1) // 2)


@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=4))
@settings(max_examples=40, deadline=None)
def test_random_structures_are_contact_algebras(seed, atoms):
    S = random_structure(np.random.default_rng(seed), atoms, full_bound=False)
    assert passes(S, "CA")


@pytest.mark.parametrize("atoms", [1, 2, 3])
def test_brute_force_matches_ultrafilter_traces_on_nca(atoms):
    for S in sweep_structures(atoms):
        if not passes(S, "NCA"):
            continue
        brute = enumerate_clusters(S, "brute")
        traced = enumerate_clusters(S, "ultrafilter")
        assert brute.as_set() == traced.as_set()
        assert traced.warnings == []


def test_largest_contact_has_one_cluster(rho_l2):
    clusters = enumerate_clusters(rho_l2, "brute")
    assert len(clusters) == 1
    assert clusters.clusters[0] == frozenset({1, 2, 3})
    traced = enumerate_clusters(rho_l2, "ultrafilter")
    assert any("UltrafilterModeUnsound" in w for w in traced.warnings)


def test_diagonal_clusters_are_principal(rho_s3):
    clusters = enumerate_clusters(rho_s3)
    assert len(clusters) == 3
    for p in range(3):
        sigma = cluster_from_ultrafilter(rho_s3, 1 << p)
        assert sigma in clusters.as_set()
        assert is_cluster(rho_s3, sigma)
    assert all(clusters.bounded)


def test_cluster_candidate_errors(rho_s2):
    with pytest.raises(EmptyCandidate):
        is_cluster(rho_s2, [])
    with pytest.raises(NotAnAtom):
        cluster_from_ultrafilter(rho_s2, 3)


def test_brute_force_is_capped():
    with pytest.raises(TooLargeForBrute):
        enumerate_clusters(diagonal_structure(5), "brute")


def test_point_at_infinity():
    S = diagonal_structure(2, bound_atoms=[0])
    sigma = sigma_infinity(S)
    assert sigma.elements == frozenset({2, 3})
    assert sigma.is_cluster
    assert sigma_infinity(NAT_MODEL) is INFINITY
    with pytest.raises(BoundedTop):
        sigma_infinity(diagonal_structure(2))


def test_cluster_properties_on_diagonal(rho_s3):
    report = cluster_properties(rho_s3)
    assert report["complete"], report["issues"]
    assert report["status"] == "PASS"
