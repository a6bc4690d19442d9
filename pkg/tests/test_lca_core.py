import pytest
from pydantic import ValidationError

from errors import ExhaustiveUnavailable
from finite_models import diagonal_structure, make_finite_lca, sweep_structures
from lca_core import (
    AlexandroffView,
    QuantifierStrategy,
    alexandroff_contact,
    canonical_contact,
    check_axioms,
    passes,
    recheck_witness,
    way_below,
)
from region_models import INTERVAL_MODEL, NAT_MODEL


def test_boolean_laws_hold_on_finite_structures(rho_s3):
    assert check_axioms(rho_s3, "BOOL").passed


def test_way_below_on_diagonal(rho_s2):
    p, q = 1, 2
    assert way_below(rho_s2, p, p)
    assert not way_below(rho_s2, p, q)
    assert way_below(rho_s2, 0, 0)


def test_alexandroff_contact_joins_unbounded_elements():
    S = diagonal_structure(3, bound_atoms=[0])
    q, r = 2, 4
    assert not S.contact(q, r)
    assert alexandroff_contact(S, q, r)
    view = AlexandroffView(S)
    assert view.contact(q, r)
    assert view.bounded(q)


def test_canonical_contacts_on_a_boolean_algebra(rho_s2):
    smallest = canonical_contact(rho_s2, "smallest")
    largest = canonical_contact(rho_s2, "largest")
    assert passes(smallest, "NCA")
    assert check_axioms(largest, "CA").passed
    report = check_axioms(largest, "NCA")
    assert report.failed_axioms() == ["C6"]
    assert report.verdict("C6").rendered == ["{p}"]


def test_c6_witness_rechecks(rho_l2):
    report = check_axioms(rho_l2, "NCA")
    verdict = report.verdict("C6")
    assert verdict.status == "fails"
    assert recheck_witness(rho_l2, "NCA", verdict)


def test_strategy_rejects_nonpositive_counts():
    with pytest.raises(ValidationError):
        QuantifierStrategy(mode="sampled", sample_count=0)


def test_unknown_suite():
    with pytest.raises(ValueError):
        check_axioms(diagonal_structure(1), "XYZ")


def test_exhaustive_needs_an_enumerator():
    with pytest.raises(ExhaustiveUnavailable):
        check_axioms(NAT_MODEL, "CA", QuantifierStrategy.exhaustive())


def test_for_algebra_picks_the_mode(rho_s2):
    assert QuantifierStrategy.for_algebra(rho_s2).mode == "exhaustive"
    assert QuantifierStrategy.for_algebra(NAT_MODEL, 10).mode == "sampled"


@pytest.mark.parametrize("atoms", [1, 2, 3])
def test_finite_rigidity_sweep(atoms):
    full = (1 << atoms) - 1
    for S in sweep_structures(atoms):
        lca = passes(S, "LCA")
        if S.bound_mask != full:
            assert not lca, S
        diagonal = all(S.adjacency[p][q] == (p == q) for p in range(atoms) for q in range(atoms))
        assert passes(S, "NCA") == diagonal


def test_empty_structure_is_degenerate():
    S = make_finite_lca(0, [])
    assert S.one() == S.zero()
    assert passes(S, "CA")


def _lca_sweep(max_atoms=3):
    for atoms in range(1, max_atoms + 1):
        for S in sweep_structures(atoms):
            if passes(S, "LCA"):
                yield S


def test_alexandroff_view_of_an_lca_is_normal():
    structures = list(_lca_sweep())
    assert len(structures) == 3
    for S in structures:
        assert passes(AlexandroffView(S), "NCA"), S


def test_alexandroff_view_of_the_reals_is_never_refuted():
    report = check_axioms(AlexandroffView(INTERVAL_MODEL), "NCA", QuantifierStrategy.sampled(300, 7, 20))
    assert report.failed_axioms() == []


@pytest.mark.parametrize("atoms", [1, 2, 3])
def test_alexandroff_contact_contains_the_contact(atoms):
    for S in sweep_structures(atoms):
        for a in S.enumerate():
            for b in S.enumerate():
                if S.contact(a, b):
                    assert alexandroff_contact(S, a, b)


def test_every_element_is_the_join_of_bounded_elements_way_below_it():
    for S in _lca_sweep():
        for a in S.enumerate():
            below = S.zero()
            for b in S.enumerate():
                if S.bounded(b) and way_below(S, b, a):
                    below = S.join(below, b)
            assert below == a, (S.name, S.render(a))


@pytest.mark.parametrize("atoms", [1, 2, 3])
def test_c2_follows_from_c1_c3_c4_c6(atoms):
    for S in sweep_structures(atoms):
        for A in (S, AlexandroffView(S), canonical_contact(S, "smallest"), canonical_contact(S, "largest")):
            report = check_axioms(A, "NCA")
            premises = all(report.verdict(name).status == "holds" for name in ("C1", "C3", "C4", "C6"))
            if premises:
                assert report.verdict("C2").status == "holds", A.name


def test_sampled_check_on_a_finite_structure(rho_s3):
    report = check_axioms(rho_s3, "CA", QuantifierStrategy.sampled(50, 3, 5))
    assert report.mode == "sampled"
    assert report.passed
    stream = rho_s3.sample_stream(3)
    assert all(next(stream) in rho_s3.enumerate() for _ in range(20))
