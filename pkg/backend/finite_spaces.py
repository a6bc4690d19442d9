"""Finite topological spaces, RC(X), RO(X) and the dense-subspace isomorphism."""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from errors import NotATopology, NotContinuous, NotDense
from finite_models import FiniteContactStructure, make_finite_lca
from lca_core import RegionAlgebra

logger = logging.getLogger(__name__)

PointSet = FrozenSet[Hashable]


def _label(points: Iterable[Hashable]) -> str:
    return "{" + ",".join(str(p) for p in sorted(points, key=str)) + "}"


@dataclass(frozen=True)
class FiniteSpace:
    points: Tuple[Hashable, ...]
    opens: FrozenSet[PointSet]
    name: str = "space"

    @property
    def carrier(self) -> PointSet:
        return frozenset(self.points)

    def interior(self, subset: Iterable[Hashable]) -> PointSet:
        subset = frozenset(subset)
        return frozenset().union(*[u for u in self.opens if u <= subset])

    def closure(self, subset: Iterable[Hashable]) -> PointSet:
        return self.carrier - self.interior(self.carrier - frozenset(subset))

    def is_open(self, subset: Iterable[Hashable]) -> bool:
        return frozenset(subset) in self.opens

    def is_closed(self, subset: Iterable[Hashable]) -> bool:
        return self.carrier - frozenset(subset) in self.opens

    def is_regular_closed(self, subset: Iterable[Hashable]) -> bool:
        subset = frozenset(subset)
        return self.closure(self.interior(subset)) == subset

    def subspace(self, subset: Iterable[Hashable]) -> "FiniteSpace":
        subset = frozenset(subset)
        return FiniteSpace(
            points=tuple(p for p in self.points if p in subset),
            opens=frozenset(u & subset for u in self.opens),
            name=f"{self.name}|{_label(subset)}",
        )


def validate_topology(points: Sequence[Hashable], opens: Iterable[Iterable[Hashable]], name: str = "space") -> FiniteSpace:
    carrier = frozenset(points)
    if len(carrier) != len(points):
        raise NotATopology("point names must be distinct")
    family = frozenset(frozenset(u) for u in opens)
    for u in family:
        if not u <= carrier:
            raise NotATopology(f"open set {_label(u)} is not a subset of the points", (u,))
    if frozenset() not in family:
        raise NotATopology("the empty set is not open")
    if carrier not in family:
        raise NotATopology("the whole space is not open")
    for u, v in itertools.combinations(sorted(family, key=lambda s: (len(s), sorted(map(str, s)))), 2):
        if u | v not in family:
            raise NotATopology(f"union of {_label(u)} and {_label(v)} is missing", (u, v))
        if u & v not in family:
            raise NotATopology(f"intersection of {_label(u)} and {_label(v)} is missing", (u, v))
    return FiniteSpace(tuple(points), family, name)


def discrete_space(points: Sequence[Hashable], name: str = "discrete") -> FiniteSpace:
    subsets = itertools.chain.from_iterable(itertools.combinations(points, k) for k in range(len(points) + 1))
    return validate_topology(points, subsets, name)


def sierpinski_space() -> FiniteSpace:
    return validate_topology(["a", "b"], [[], ["a"], ["a", "b"]], "sierpinski")


def sweep_topologies(points: Sequence[Hashable]) -> Iterator[FiniteSpace]:
    """Every labeled topology on ``points``."""
    carrier = frozenset(points)
    middle = [
        frozenset(c)
        for k in range(1, len(points))
        for c in itertools.combinations(points, k)
    ]
    for choice in itertools.product((False, True), repeat=len(middle)):
        family = {frozenset(), carrier} | {s for s, on in zip(middle, choice) if on}
        if all(u | v in family and u & v in family for u in family for v in family):
            yield FiniteSpace(tuple(points), frozenset(family), "sweep")


def is_connected_space(X: FiniteSpace) -> bool:
    """No proper nonempty clopen subset; the empty space counts as connected."""
    return not any(u and u != X.carrier and X.is_closed(u) for u in X.opens)


def is_hausdorff(X: FiniteSpace) -> bool:
    for x, y in itertools.combinations(X.points, 2):
        if not any(x in u and y in v and not (u & v) for u in X.opens for v in X.opens):
            return False
    return True


def is_discrete(X: FiniteSpace) -> bool:
    return all(frozenset([p]) in X.opens for p in X.points)


class RegularClosedAlgebra(RegionAlgebra):
    """RC(X): ∨ = ∪, ∧ = cl∘int of ∩, * = cl of the complement, contact = meeting, IB = everything."""

    carrier_kind = "finite"

    def __init__(self, space: FiniteSpace):
        self.space = space
        self.name = f"RC({space.name})"
        subsets = itertools.chain.from_iterable(
            itertools.combinations(space.points, k) for k in range(len(space.points) + 1)
        )
        self.elements: List[PointSet] = sorted(
            {frozenset(s) for s in subsets if space.is_regular_closed(s)},
            key=lambda s: (len(s), sorted(map(str, s))),
        )
        self._atoms = [
            e for e in self.elements if e and not any(f and f < e for f in self.elements)
        ]

    def zero(self):
        return frozenset()

    def one(self):
        return self.space.carrier

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return self.space.closure(self.space.interior(a & b))

    def complement(self, a):
        return self.space.closure(self.space.carrier - a)

    def leq(self, a, b):
        return a <= b

    def contact(self, a, b):
        return bool(a & b)

    def bounded(self, a):
        return True

    def enumerate(self):
        return list(self.elements)

    def atoms(self) -> List[PointSet]:
        return list(self._atoms)

    def render(self, a):
        return _label(a)

    def sort_key(self, a):
        return (len(a), sorted(map(str, a)))

    def encode(self, F: PointSet) -> int:
        return sum(1 << i for i, atom in enumerate(self._atoms) if atom <= F)

    def decode(self, mask: int) -> PointSet:
        return frozenset().union(*[atom for i, atom in enumerate(self._atoms) if mask >> i & 1])

    def to_structure(self) -> FiniteContactStructure:
        """The isomorphic atom-adjacency structure (atoms touch iff they intersect)."""
        n = len(self._atoms)
        adjacency = [[bool(self._atoms[i] & self._atoms[j]) for j in range(n)] for i in range(n)]
        names = [f"a{i}" for i in range(n)]
        return make_finite_lca(n, adjacency, list(range(n)), atom_names=names, name=self.name)


def rc_algebra(X: FiniteSpace) -> RegularClosedAlgebra:
    return RegularClosedAlgebra(X)


class RegularOpenAlgebra(RegionAlgebra):
    """RO(X) = {int(F*) : F ∈ RC(X)}, with contact cl(U) ∩ cl(V) ≠ ∅."""

    carrier_kind = "finite"

    def __init__(self, space: FiniteSpace):
        self.space = space
        self.name = f"RO({space.name})"
        rc = RegularClosedAlgebra(space)
        self.elements = sorted({space.interior(rc.complement(F)) for F in rc.elements}, key=lambda s: (len(s), sorted(map(str, s))))

    def zero(self):
        return frozenset()

    def one(self):
        return self.space.carrier

    def join(self, a, b):
        return self.space.interior(self.space.closure(a | b))

    def meet(self, a, b):
        return a & b

    def complement(self, a):
        return self.space.interior(self.space.carrier - a)

    def leq(self, a, b):
        return a <= b

    def contact(self, a, b):
        return bool(self.space.closure(a) & self.space.closure(b))

    def bounded(self, a):
        return True

    def enumerate(self):
        return list(self.elements)

    def render(self, a):
        return _label(a)


def regular_open_algebra(X: FiniteSpace) -> RegularOpenAlgebra:
    return RegularOpenAlgebra(X)


class IsomorphismReport(BaseModel):
    verdict: bool
    forward: Dict[str, str] = {}
    backward: Dict[str, str] = {}
    issues: List[str] = []


def _check_iso(A: RegionAlgebra, B: RegionAlgebra, forward, backward, check_contact: bool = True) -> List[str]:
    issues = []
    for a in A.enumerate():
        if backward(forward(a)) != a:
            issues.append(f"{A.render(a)} does not return through the inverse")
        for b in A.enumerate():
            if forward(A.join(a, b)) != B.join(forward(a), forward(b)):
                issues.append(f"join of {A.render(a)}, {A.render(b)} not preserved")
            if forward(A.meet(a, b)) != B.meet(forward(a), forward(b)):
                issues.append(f"meet of {A.render(a)}, {A.render(b)} not preserved")
            if check_contact and A.contact(a, b) != B.contact(forward(a), forward(b)):
                issues.append(f"contact of {A.render(a)}, {A.render(b)} not preserved")
        if forward(A.complement(a)) != B.complement(forward(a)):
            issues.append(f"complement of {A.render(a)} not preserved")
    for b in B.enumerate():
        if forward(backward(b)) != b:
            issues.append(f"{B.render(b)} is not hit")
    return issues


def ro_isomorphism(X: FiniteSpace) -> IsomorphismReport:
    """F ↦ int(F) from RC(X) onto RO(X), with inverse U ↦ cl(U)."""
    rc, ro = rc_algebra(X), regular_open_algebra(X)
    issues = _check_iso(rc, ro, X.interior, X.closure)
    return IsomorphismReport(
        verdict=not issues,
        forward={rc.render(F): ro.render(X.interior(F)) for F in rc.elements},
        backward={ro.render(U): rc.render(X.closure(U)) for U in ro.elements},
        issues=issues,
    )


def dense_subspace_iso(Y: FiniteSpace, X: Iterable[Hashable]) -> IsomorphismReport:
    X = frozenset(X)
    if Y.closure(X) != Y.carrier:
        raise NotDense(f"cl({_label(X)}) = {_label(Y.closure(X))} is not the whole space")
    sub = Y.subspace(X)
    rc_y, rc_x = rc_algebra(Y), rc_algebra(sub)
    r = lambda F: F & X
    e = lambda G: Y.closure(G)
    issues = _check_iso(rc_y, rc_x, r, e, check_contact=False)
    return IsomorphismReport(
        verdict=not issues,
        forward={rc_y.render(F): rc_x.render(r(F)) for F in rc_y.elements},
        backward={rc_x.render(G): rc_y.render(e(G)) for G in rc_x.elements},
        issues=issues,
    )


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assign: Tuple[Tuple[Hashable, Hashable], ...]
    name: str = "f"

    def __call__(self, x: Hashable) -> Hashable:
        return dict(self.assign)[x]

    def preimage(self, subset: Iterable[Hashable]) -> PointSet:
        subset = frozenset(subset)
        return frozenset(x for x, y in self.assign if y in subset)

    def then(self, g: "SpaceMap") -> "SpaceMap":
        """g ∘ self."""
        return SpaceMap(self.source, g.target, tuple((x, g(y)) for x, y in self.assign), name=f"{g.name}.{self.name}")


def make_space_map(source: FiniteSpace, target: FiniteSpace, assign: Mapping[Hashable, Hashable], name: str = "f") -> SpaceMap:
    if set(assign) != set(source.points):
        raise NotContinuous(f"{name} must be defined exactly on the points of {source.name}")
    if not set(assign.values()) <= set(target.points):
        raise NotContinuous(f"{name} leaves the points of {target.name}")
    f = SpaceMap(source, target, tuple((x, assign[x]) for x in source.points), name)
    for v in target.opens:
        if not source.is_open(f.preimage(v)):
            raise NotContinuous(f"preimage of open {_label(v)} under {name} is not open")
    return f


def all_maps(source: FiniteSpace, target: FiniteSpace) -> Iterator[SpaceMap]:
    for values in itertools.product(target.points, repeat=len(source.points)):
        try:
            yield make_space_map(source, target, dict(zip(source.points, values)))
        except NotContinuous:
            continue
