import pytest

from delta_ideals import (
    bounded_elements,
    delta_ideal_violation,
    filter_from_prime,
    frame,
    frame_ops,
    iota,
    iota_inverse,
    is_delta_ideal,
    is_filter_in_bounded,
    is_prime_element,
    prime_cluster_bijection,
    principal_delta_ideal,
    verify_frame,
)
from errors import NotDeltaIdeal
from finite_models import complete_structure, sweep_structures
from lca_core import passes


def _lca_structures(max_atoms):
    for atoms in range(1, max_atoms + 1):
        for S in sweep_structures(atoms):
            if passes(S, "LCA"):
                yield S


def test_frame_and_prime_bijection_on_small_lcas():
    seen = 0
    for S in _lca_structures(3):
        report = verify_frame(S)
        assert report.iota_isomorphism, report.issues
        assert report.principal_onto_regular_open, report.issues
        bijection = prime_cluster_bijection(S)
        assert bijection.verdict, bijection.issues
        seen += 1
    assert seen == 3


def test_diagonal_frame(rho_s2):
    ideals = frame(rho_s2)
    assert len(ideals) == 4
    assert ideals[0] == frozenset({0})
    assert ideals[-1] == bounded_elements(rho_s2)


def test_principal_ideals(rho_s2):
    assert principal_delta_ideal(rho_s2, 1) == frozenset({0, 1})
    assert principal_delta_ideal(complete_structure(2), 1) == frozenset({0})


def test_violations_name_the_clause(rho_l2):
    assert delta_ideal_violation(rho_l2, {1}).startswith("lower set")
    assert delta_ideal_violation(rho_l2, {0, 1}).startswith("interpolative")
    assert not is_delta_ideal(rho_l2, {0, 1})
    assert is_delta_ideal(rho_l2, {0})


def test_frame_operations(rho_s2):
    ops = frame_ops(rho_s2, {0, 1}, {0, 2})
    assert ops["join"] == frozenset({0, 1, 2, 3})
    assert ops["meet"] == frozenset({0})
    with pytest.raises(NotDeltaIdeal):
        frame_ops(rho_s2, {1}, {0})


def test_iota_and_its_inverse(rho_s3):
    I = principal_delta_ideal(rho_s3, 5)
    U = iota(rho_s3, I)
    assert U == frozenset({0, 2})
    assert iota_inverse(rho_s3, U) == I


def test_prime_elements(rho_s2):
    IB = bounded_elements(rho_s2)
    assert not is_prime_element(rho_s2, IB)
    assert is_prime_element(rho_s2, {0, 2})
    assert not is_prime_element(rho_s2, {0})
    V = filter_from_prime(rho_s2, {0, 2})
    assert V == frozenset({1, 3})
    assert is_filter_in_bounded(rho_s2, V)
