import pytest

from errors import NotATopology, NotContinuous, NotDense
from finite_spaces import (
    all_maps,
    dense_subspace_iso,
    discrete_space,
    is_connected_space,
    is_discrete,
    is_hausdorff,
    make_space_map,
    rc_algebra,
    regular_open_algebra,
    ro_isomorphism,
    sweep_topologies,
    validate_topology,
)
from lca_core import check_axioms, passes


def test_missing_union_is_reported():
    with pytest.raises(NotATopology) as info:
        validate_topology(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])
    assert info.value.witness == (frozenset({"a"}), frozenset({"b"}))


def test_whole_space_must_be_open():
    with pytest.raises(NotATopology):
        validate_topology(["a", "b"], [[], ["a"]])


def test_closure_and_interior(sierpinski):
    assert sierpinski.closure(["a"]) == frozenset({"a", "b"})
    assert sierpinski.interior(["b"]) == frozenset()
    assert not sierpinski.is_regular_closed(["b"])


def test_separation_properties(sierpinski, discrete2):
    assert not is_hausdorff(sierpinski)
    assert is_connected_space(sierpinski)
    assert is_hausdorff(discrete2) and is_discrete(discrete2)
    assert not is_connected_space(discrete2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hausdorff_finite_spaces_are_discrete(n):
    for X in sweep_topologies([f"x{i}" for i in range(n)]):
        assert is_hausdorff(X) == is_discrete(X)


def test_topology_counts():
    assert sum(1 for _ in sweep_topologies(["a", "b"])) == 4
    assert sum(1 for _ in sweep_topologies(["a", "b", "c"])) == 29


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_connectedness_matches_con(n):
    for X in sweep_topologies([f"x{i}" for i in range(n)]):
        assert is_connected_space(X) == passes(rc_algebra(X), "CON"), sorted(map(sorted, X.opens))


def test_regular_closed_algebra_is_a_contact_algebra(sierpinski, discrete2):
    for X in (sierpinski, discrete2):
        assert check_axioms(rc_algebra(X), "CA").passed
        assert check_axioms(rc_algebra(X), "BOOL").passed


def test_rc_structure_encoding(discrete2):
    rc = rc_algebra(discrete2)
    S = rc.to_structure()
    assert S.atom_count == 2
    for F in rc.elements:
        assert rc.decode(rc.encode(F)) == F


def test_regular_open_representation(sierpinski, discrete2):
    for X in (sierpinski, discrete2):
        report = ro_isomorphism(X)
        assert report.verdict, report.issues
        assert check_axioms(regular_open_algebra(X), "CA").passed


def test_dense_subspace(sierpinski):
    assert dense_subspace_iso(sierpinski, ["a"]).verdict
    with pytest.raises(NotDense):
        dense_subspace_iso(sierpinski, ["b"])


def test_continuity(sierpinski, discrete2):
    with pytest.raises(NotContinuous):
        make_space_map(sierpinski, sierpinski, {"a": "b", "b": "a"})
    point = discrete_space(["z"], name="Z")
    assert len(list(all_maps(point, sierpinski))) == 2
    assert len(list(all_maps(sierpinski, discrete2))) == 2


def test_space_maps_compose(discrete2):
    swap = make_space_map(discrete2, discrete2, {"x0": "x1", "x1": "x0"}, name="swap")
    twice = swap.then(swap)
    assert [twice(x) for x in discrete2.points] == ["x0", "x1"]
    assert swap.preimage(["x0"]) == frozenset({"x1"})
