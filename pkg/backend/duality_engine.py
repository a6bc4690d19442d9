"""Dual spaces of finite structures: clusters of (B, C_ρ) with the topology generated by λ(a).

Points of the dual are indices into ``DualSpace.clusters``; the carrier of the
locally compact dual is the set of bounded clusters.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel

from finite_models import Cluster, ClusterSet, FiniteContactStructure, enumerate_clusters
from finite_spaces import FiniteSpace, is_discrete, is_hausdorff, rc_algebra
from lca_core import QuantifierStrategy, check_axioms

logger = logging.getLogger(__name__)

PointSet = FrozenSet[int]


def _union_closure(family: set) -> set:
    closed = set(family)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                u = a | b
                if u not in closed:
                    closed.add(u)
                    new.append(u)
        frontier = new
    return closed


def _intersection_closure(family: set) -> set:
    closed = set(family)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                u = a & b
                if u not in closed:
                    closed.add(u)
                    new.append(u)
        frontier = new
    return closed


def topology_from_closed_base(points: Tuple[int, ...], base: List[PointSet], name: str) -> FiniteSpace:
    """Closed sets are all intersections of finite unions of base members."""
    carrier = frozenset(points)
    closed = _intersection_closure(_union_closure(set(base)) | {frozenset(), carrier})
    return FiniteSpace(points, frozenset(carrier - c for c in closed), name)


@dataclass(frozen=True)
class DualSpace:
    structure: FiniteContactStructure
    clusters: ClusterSet
    bounded_points: Tuple[int, ...]
    full_topology: FiniteSpace
    topology: FiniteSpace
    lca_passed: bool

    @property
    def points(self) -> Tuple[int, ...]:
        return tuple(range(len(self.clusters)))

    def cluster(self, index: int) -> Cluster:
        return self.clusters.clusters[index]

    def index_of(self, sigma) -> Optional[int]:
        sigma = frozenset(sigma)
        for i, c in enumerate(self.clusters.clusters):
            if c == sigma:
                return i
        return None


@lru_cache(maxsize=128)
def dualize(S: FiniteContactStructure) -> DualSpace:
    lca_passed = check_axioms(S, "LCA", QuantifierStrategy.exhaustive()).passed
    if not lca_passed:
        logger.info("%s fails the LCA suite; the dual carries no round-trip guarantee", S.name)
    clusters = enumerate_clusters(S, "brute", "alexandroff")
    points = tuple(range(len(clusters)))
    base = [lambda_all_from(clusters, a) for a in S.enumerate()]
    full = topology_from_closed_base(points, base, f"Clust({S.name})")
    bounded_points = tuple(i for i in points if clusters.bounded[i])
    topology = full.subspace(bounded_points)
    topology = FiniteSpace(topology.points, topology.opens, f"Psi({S.name})")
    return DualSpace(S, clusters, bounded_points, full, topology, lca_passed)


def lambda_all_from(clusters: ClusterSet, a: int) -> PointSet:
    return frozenset(i for i, sigma in enumerate(clusters.clusters) if a in sigma)


def lambda_all(S: FiniteContactStructure, a: int) -> PointSet:
    """λ(a) over all clusters of (B, C_ρ)."""
    return lambda_all_from(dualize(S).clusters, a)


def lambda_g(S: FiniteContactStructure, a: int) -> PointSet:
    dual = dualize(S)
    return frozenset(i for i in dual.bounded_points if a in dual.cluster(i))


def trace(S: FiniteContactStructure, sigma) -> FrozenSet[int]:
    """σ ∩ IB."""
    return frozenset(a for a in sigma if S.bounded(a))


def cluster_from_trace(S: FiniteContactStructure, bounded_part) -> FrozenSet[int]:
    """{a : a ρ d for every d in the trace}."""
    bounded_part = list(bounded_part)
    return frozenset(a for a in S.enumerate() if all(S.contact(a, d) for d in bounded_part))


def render_cluster(S: FiniteContactStructure, sigma) -> str:
    minimal = [a for a in sigma if not any(b != a and S.leq(b, a) for b in sigma)]
    return "<" + " ".join(S.render(a) for a in sorted(minimal)) + ">"


class TMapReport(BaseModel):
    table: Dict[str, Optional[int]]
    clusters: Dict[str, str]
    hausdorff: bool
    guaranteed: bool
    bijective: Optional[bool] = None
    homeomorphism: Optional[bool] = None
    note: str = ""


def t_map(X: FiniteSpace) -> TMapReport:
    """x ↦ σ_x = {F ∈ RC(X) : x ∈ F}, located among the clusters of the dual of RC(X)."""
    rc = rc_algebra(X)
    S = rc.to_structure()
    dual = dualize(S)
    table: Dict[str, Optional[int]] = {}
    raw: Dict[object, Optional[int]] = {}
    for x in X.points:
        sigma = frozenset(rc.encode(F) for F in rc.elements if x in F)
        raw[x] = dual.index_of(sigma)
        table[str(x)] = raw[x]
    hausdorff = is_hausdorff(X)
    report = TMapReport(
        table=table,
        clusters={str(i): render_cluster(S, dual.cluster(i)) for i in dual.points},
        hausdorff=hausdorff,
        guaranteed=hausdorff,
    )
    if not hausdorff:
        report.note = "NotGuaranteed: the space is not Hausdorff"
        return report
    image = [raw[x] for x in X.points]
    report.bijective = None not in image and sorted(image) == sorted(dual.bounded_points)
    if report.bijective:
        forward = all(dual.topology.is_open(raw[x] for x in U) for U in X.opens)
        inverse = {raw[x]: x for x in X.points}
        backward = all(X.is_open(inverse[i] for i in V) for V in dual.topology.opens)
        report.homeomorphism = forward and backward
    else:
        report.homeomorphism = False
    return report


class RoundtripReport(BaseModel):
    structure: str
    verdict: bool
    declined: bool = False
    reason: str = ""
    dual_points: int = 0
    dual_discrete: Optional[bool] = None
    dual_hausdorff: Optional[bool] = None
    issues: List[str] = []


def roundtrip_algebra(S: FiniteContactStructure) -> RoundtripReport:
    """λᵍ: S → RC(Ψᵃ(S)) must be a Boolean isomorphism preserving ρ and IB."""
    report = check_axioms(S, "LCA", QuantifierStrategy.exhaustive())
    if not report.passed:
        return RoundtripReport(
            structure=S.name,
            verdict=False,
            declined=True,
            reason="LCA suite fails: " + ", ".join(report.failed_axioms()),
        )
    dual = dualize(S)
    rc = rc_algebra(dual.topology)
    lam = {a: lambda_g(S, a) for a in S.enumerate()}
    issues = []
    image = set(lam.values())
    if image != set(rc.elements):
        issues.append("lambda_g is not onto RC of the dual")
    if len(image) != len(lam):
        issues.append("lambda_g is not injective")
    for a in S.enumerate():
        if lam[a] not in rc.elements:
            issues.append(f"lambda_g({S.render(a)}) is not regular closed")
            continue
        if lam[S.complement(a)] != rc.complement(lam[a]):
            issues.append(f"complement of {S.render(a)} not preserved")
        if S.bounded(a) != rc.bounded(lam[a]):
            issues.append(f"boundedness of {S.render(a)} not preserved")
        for b in S.enumerate():
            if lam[S.join(a, b)] != rc.join(lam[a], lam[b]):
                issues.append(f"join of {S.render(a)}, {S.render(b)} not preserved")
            if lam[S.meet(a, b)] != rc.meet(lam[a], lam[b]):
                issues.append(f"meet of {S.render(a)}, {S.render(b)} not preserved")
            if S.contact(a, b) != rc.contact(lam[a], lam[b]):
                issues.append(f"contact of {S.render(a)}, {S.render(b)} not preserved")
    return RoundtripReport(
        structure=S.name,
        verdict=not issues,
        dual_points=len(dual.bounded_points),
        dual_discrete=is_discrete(dual.topology),
        dual_hausdorff=is_hausdorff(dual.topology),
        issues=issues,
    )


class RealizationReport(BaseModel):
    structure: str
    contact_by_clusters: bool
    open_base: bool
    complement_identity: bool
    declined: bool = False
    issues: List[str] = []

    @property
    def verdict(self) -> bool:
        return not self.declined and self.contact_by_clusters and self.open_base and self.complement_identity


def verify_realization(S: FiniteContactStructure) -> RealizationReport:
    report = check_axioms(S, "LCA", QuantifierStrategy.exhaustive())
    if not report.passed:
        return RealizationReport(
            structure=S.name,
            contact_by_clusters=False,
            open_base=False,
            complement_identity=False,
            declined=True,
            issues=["LCA suite fails: " + ", ".join(report.failed_axioms())],
        )
    dual = dualize(S)
    issues = []
    elements = S.enumerate()

    contact_ok = True
    for a, b in itertools.product(elements, repeat=2):
        shared = any(a in dual.cluster(i) and b in dual.cluster(i) for i in dual.bounded_points)
        if S.contact(a, b) != shared:
            contact_ok = False
            issues.append(f"contact {S.render(a)}, {S.render(b)} disagrees with shared clusters")

    topo = dual.topology
    base = [topo.interior(lambda_g(S, a)) for a in elements if S.bounded(a)]
    base_ok = True
    for U in topo.opens:
        covered = frozenset().union(*[B for B in base if B <= U])
        if covered != U:
            base_ok = False
            issues.append(f"open set {sorted(U)} is not a union of basic opens")

    full = dual.full_topology
    identity_ok = True
    for a in elements:
        lhs = full.carrier - lambda_all(S, a)
        rhs = full.interior(lambda_all(S, S.complement(a)))
        if lhs != rhs:
            identity_ok = False
            issues.append(f"complement identity fails at {S.render(a)}")
    return RealizationReport(
        structure=S.name,
        contact_by_clusters=contact_ok,
        open_base=base_ok,
        complement_identity=identity_ok,
        issues=issues,
    )
