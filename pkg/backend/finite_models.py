"""Finite Boolean algebras with atom-adjacency contact and a principal bounded ideal.

Elements are bit masks over the atoms. Contact is the extension of the atom
relation: ``a`` touches ``b`` iff some atom of ``a`` is adjacent to some atom
of ``b``. IB is the principal ideal below ``bound_mask``.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from errors import AtomCountOutOfRange, BoundedTop, EmptyCandidate, InvalidAdjacency, NotAnAtom, TooLargeForBrute
from lca_core import AlexandroffView, QuantifierStrategy, RegionAlgebra, check_axioms, way_below

logger = logging.getLogger(__name__)

MAX_ATOMS = 5
MAX_BRUTE_ATOMS = 4
DEFAULT_ATOM_NAMES = ("p", "q", "r", "s", "t")

ContactChoice = Literal["rho", "alexandroff"]
Cluster = FrozenSet[int]


@dataclass(frozen=True)
class FiniteContactStructure(RegionAlgebra):
    atom_count: int
    adjacency: Tuple[Tuple[bool, ...], ...]
    bound_mask: int
    atom_names: Tuple[str, ...] = ()
    name: str = "finite"
    _reach: Tuple[int, ...] = field(default=(), compare=False, hash=False, repr=False)

    carrier_kind = "finite"

    def __post_init__(self):
        if not self.atom_names:
            object.__setattr__(self, "atom_names", DEFAULT_ATOM_NAMES[: self.atom_count])
        neighbours = [
            sum(1 << q for q in range(self.atom_count) if self.adjacency[p][q]) for p in range(self.atom_count)
        ]
        reach = []
        for a in range(1 << self.atom_count):
            mask = 0
            for p in range(self.atom_count):
                if a >> p & 1:
                    mask |= neighbours[p]
            reach.append(mask)
        object.__setattr__(self, "_reach", tuple(reach))

    @property
    def full(self) -> int:
        return (1 << self.atom_count) - 1

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return self.full

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b

    def complement(self, a):
        return self.full & ~a

    def leq(self, a, b):
        return a & ~b == 0

    def contact(self, a, b):
        return self._reach[a] & b != 0

    def bounded(self, a):
        return a & ~self.bound_mask == 0

    def enumerate(self) -> List[int]:
        return list(range(1 << self.atom_count))

    def atoms(self) -> List[int]:
        return [1 << p for p in range(self.atom_count)]

    def render(self, a: int) -> str:
        return "{" + ",".join(self.atom_names[p] for p in range(self.atom_count) if a >> p & 1) + "}"

    def sort_key(self, a: int):
        return a

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text == "0":
            return 0
        if text == "1":
            return self.full
        body = text[1:-1] if text.startswith("{") and text.endswith("}") else text
        mask = 0
        for token in filter(None, (t.strip() for t in body.replace("+", ",").split(","))):
            if token not in self.atom_names:
                raise ValueError(f"unknown atom {token!r}")
            mask |= 1 << self.atom_names.index(token)
        return mask

    def adjacency_matrix(self) -> np.ndarray:
        return np.array(self.adjacency, dtype=bool).reshape(self.atom_count, self.atom_count)


def make_finite_lca(
    atom_count: int,
    adjacency: Union[Sequence[Sequence[bool]], np.ndarray],
    bound_atoms: Optional[Sequence[int]] = None,
    atom_names: Optional[Sequence[str]] = None,
    name: str = "finite",
) -> FiniteContactStructure:
    if not 0 <= atom_count <= MAX_ATOMS:
        raise AtomCountOutOfRange(f"atom_count must be in 0..{MAX_ATOMS}, got {atom_count}")
    matrix = np.array(adjacency, dtype=bool).reshape(atom_count, atom_count) if atom_count else np.zeros((0, 0), bool)
    if not matrix.diagonal().all():
        p = int(np.flatnonzero(~matrix.diagonal())[0])
        raise InvalidAdjacency(f"adjacency[{p}][{p}] must be true (adjacency is reflexive)")
    if not np.array_equal(matrix, matrix.T):
        p, q = (int(x) for x in np.argwhere(matrix != matrix.T)[0])
        raise InvalidAdjacency(f"adjacency[{p}][{q}] != adjacency[{q}][{p}] (asymmetric)")
    bound_atoms = range(atom_count) if bound_atoms is None else bound_atoms
    bound_mask = 0
    for p in bound_atoms:
        if not 0 <= p < atom_count:
            raise InvalidAdjacency(f"bound atom {p} out of range")
        bound_mask |= 1 << p
    names = tuple(atom_names) if atom_names else DEFAULT_ATOM_NAMES[:atom_count]
    if len(names) != atom_count or len(set(names)) != atom_count:
        raise InvalidAdjacency("atom names must be distinct and one per atom")
    return FiniteContactStructure(
        atom_count=atom_count,
        adjacency=tuple(tuple(bool(x) for x in row) for row in matrix.tolist()),
        bound_mask=bound_mask,
        atom_names=names,
        name=name,
    )


def diagonal_structure(atom_count: int, bound_atoms: Optional[Sequence[int]] = None, name: str = "rho_s") -> FiniteContactStructure:
    return make_finite_lca(atom_count, np.eye(atom_count, dtype=bool), bound_atoms, name=name)


def complete_structure(atom_count: int, name: str = "rho_l") -> FiniteContactStructure:
    return make_finite_lca(atom_count, np.ones((atom_count, atom_count), dtype=bool), name=name)


def sweep_structures(atom_count: int) -> Iterator[FiniteContactStructure]:
    """Every reflexive symmetric adjacency on ``atom_count`` atoms with every bound."""
    pairs = list(itertools.combinations(range(atom_count), 2))
    for edges in itertools.product((False, True), repeat=len(pairs)):
        matrix = np.eye(atom_count, dtype=bool)
        for (p, q), on in zip(pairs, edges):
            matrix[p, q] = matrix[q, p] = on
        for bound_mask in range(1 << atom_count):
            bound = [p for p in range(atom_count) if bound_mask >> p & 1]
            yield make_finite_lca(atom_count, matrix, bound, name=f"sweep{atom_count}")


def random_structure(rng: np.random.Generator, atom_count: int, full_bound: bool = True) -> FiniteContactStructure:
    upper = np.triu(rng.integers(0, 2, size=(atom_count, atom_count)).astype(bool), 1)
    matrix = upper | upper.T | np.eye(atom_count, dtype=bool)
    bound = range(atom_count) if full_bound else [p for p in range(atom_count) if rng.integers(0, 2)]
    return make_finite_lca(atom_count, matrix, list(bound), name="random")


# Clusters


class ClusterSet(BaseModel):
    clusters: List[FrozenSet[int]] = []
    bounded: List[bool] = []
    mode: str = "brute"
    contact_choice: str = "rho"
    warnings: List[str] = []

    def __len__(self) -> int:
        return len(self.clusters)

    def bounded_clusters(self) -> List[FrozenSet[int]]:
        return [c for c, b in zip(self.clusters, self.bounded) if b]

    def as_set(self) -> set:
        return set(self.clusters)


def contact_view(S: RegionAlgebra, contact_choice: ContactChoice) -> RegionAlgebra:
    return S if contact_choice == "rho" else AlexandroffView(S)


def cluster_violation(A: RegionAlgebra, sigma) -> Optional[str]:
    """Name of the first cluster axiom (K1, K2, K3) that ``sigma`` violates, else None."""
    members = list(sigma)
    for a in members:
        for b in members:
            if not A.contact(a, b):
                return "K1"
    elements = A.enumerate()
    for a in elements:
        for b in elements:
            if A.join(a, b) in sigma and a not in sigma and b not in sigma:
                return "K2"
    for a in elements:
        if a not in sigma and all(A.contact(a, b) for b in members):
            return "K3"
    return None


def is_cluster(S: RegionAlgebra, sigma, contact_choice: ContactChoice = "rho") -> bool:
    sigma = frozenset(sigma)
    if not sigma:
        raise EmptyCandidate("a cluster candidate must be nonempty")
    return cluster_violation(contact_view(S, contact_choice), sigma) is None


def cluster_from_ultrafilter(S: FiniteContactStructure, atom: int, contact_choice: ContactChoice = "rho") -> Cluster:
    if atom <= 0 or atom & (atom - 1) or atom > S.full:
        raise NotAnAtom(f"{S.render(atom) if 0 <= atom <= S.full else atom} is not an atom")
    A = contact_view(S, contact_choice)
    return frozenset(a for a in S.enumerate() if A.contact(a, atom))


def _canonical(clusters) -> List[Cluster]:
    return sorted(set(clusters), key=lambda c: tuple(sorted(c)))


@lru_cache(maxsize=256)
def _brute_clusters(S: FiniteContactStructure, contact_choice: ContactChoice) -> Tuple[Cluster, ...]:
    A = contact_view(S, contact_choice)
    size = 1 << S.atom_count
    # clusters are up-sets without 0 whenever contact is monotone and 0 touches nothing
    up = [sum(1 << b for b in range(size) if b & a == a) for a in range(size)]
    found = []
    for candidate in range(2, 1 << size, 2):
        members = [a for a in range(size) if candidate >> a & 1]
        if any(up[a] & ~candidate for a in members):
            continue
        sigma = frozenset(members)
        if cluster_violation(A, sigma) is None:
            found.append(sigma)
    logger.debug("brute force found %d clusters on %s", len(found), S.name)
    return tuple(_canonical(found))


def enumerate_clusters(
    S: FiniteContactStructure,
    mode: Literal["brute", "ultrafilter"] = "brute",
    contact_choice: ContactChoice = "rho",
) -> ClusterSet:
    warnings: List[str] = []
    if mode == "brute":
        if S.atom_count > MAX_BRUTE_ATOMS:
            raise TooLargeForBrute(f"brute force is capped at {MAX_BRUTE_ATOMS} atoms, got {S.atom_count}")
        clusters = list(_brute_clusters(S, contact_choice))
    else:
        A = contact_view(S, contact_choice)
        if not check_axioms(A, "NCA", QuantifierStrategy.exhaustive()).passed:
            warnings.append("UltrafilterModeUnsound: the NCA suite fails, ultrafilter traces may not be clusters")
        clusters = _canonical(cluster_from_ultrafilter(S, atom, contact_choice) for atom in S.atoms())
    return ClusterSet(
        clusters=clusters,
        bounded=[any(S.bounded(a) for a in c) for c in clusters],
        mode=mode,
        contact_choice=contact_choice,
        warnings=warnings,
    )


class SigmaInfinity(BaseModel):
    elements: FrozenSet[int]
    is_cluster: bool
    failing_axiom: Optional[str] = None


def sigma_infinity(S: RegionAlgebra):
    """B∖IB. Finite structures get an explicit report; infinite models the symbolic cluster."""
    if S.bounded(S.one()):
        raise BoundedTop(f"1 is bounded in {S.name}")
    if S.enumerate() is None:
        from region_models import INFINITY

        return INFINITY
    sigma = frozenset(a for a in S.enumerate() if not S.bounded(a))
    failing = cluster_violation(AlexandroffView(S), sigma)
    return SigmaInfinity(elements=sigma, is_cluster=failing is None, failing_axiom=failing)


def cluster_properties(S: FiniteContactStructure, clusters: Optional[ClusterSet] = None) -> Dict[str, object]:
    """Maximality, the separation property of non-members and the bounded-complement property."""
    clusters = clusters or enumerate_clusters(S)
    issues: List[str] = []
    members = clusters.clusters
    for s1, s2 in itertools.permutations(members, 2):
        if s1 < s2:
            issues.append(f"cluster {sorted(s1)} strictly inside {sorted(s2)}")
    for sigma in members:
        for a in S.enumerate():
            if a in sigma:
                continue
            if not any(b not in sigma and way_below(S, a, b) for b in S.enumerate()):
                issues.append(f"no b outside {sorted(sigma)} with {S.render(a)} << b")
    for sigma, is_bounded in zip(members, clusters.bounded):
        if is_bounded and not any(S.bounded(b) and S.complement(b) not in sigma for b in S.enumerate()):
            issues.append(f"bounded cluster {sorted(sigma)} has no b in IB with b* outside")
    return {"complete": not issues, "issues": issues, "status": "PASS" if not issues else "FAIL"}
