"""δ-ideals of finite structures, their frame, and the isomorphism ι onto dual open sets."""
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from duality_engine import dualize, lambda_g
from errors import NotDeltaIdeal, NotOpen
from finite_models import FiniteContactStructure
from lca_core import QuantifierStrategy, check_axioms, way_below

logger = logging.getLogger(__name__)

DeltaIdeal = FrozenSet[int]


def delta_ideal_violation(S: FiniteContactStructure, I: Iterable[int]) -> Optional[str]:
    """First failing clause among: nonempty lower set, join-closed, inside IB, interpolative."""
    I = frozenset(I)
    if 0 not in I:
        return "lower set: 0 is missing"
    for a in I:
        for b in S.enumerate():
            if S.leq(b, a) and b not in I:
                return f"lower set: {S.render(b)} <= {S.render(a)} is missing"
    for a, b in itertools.combinations(sorted(I), 2):
        if S.join(a, b) not in I:
            return f"join-closed: {S.render(a)} v {S.render(b)} is missing"
    for a in sorted(I):
        if not S.bounded(a):
            return f"inside IB: {S.render(a)} is unbounded"
    for a in sorted(I):
        if not any(way_below(S, a, b) for b in I):
            return f"interpolative: nothing in I is way above {S.render(a)}"
    return None


def is_delta_ideal(S: FiniteContactStructure, I: Iterable[int]) -> bool:
    return delta_ideal_violation(S, I) is None


def _require(S: FiniteContactStructure, I: Iterable[int]) -> DeltaIdeal:
    I = frozenset(I)
    failure = delta_ideal_violation(S, I)
    if failure is not None:
        raise NotDeltaIdeal(f"{render_ideal(S, I)}: {failure}")
    return I


def bounded_elements(S: FiniteContactStructure) -> DeltaIdeal:
    return frozenset(a for a in S.enumerate() if S.bounded(a))


def principal_delta_ideal(S: FiniteContactStructure, a: int) -> DeltaIdeal:
    """I_a = {b ∈ IB : b ≪ a}."""
    ideal = frozenset(b for b in S.enumerate() if S.bounded(b) and way_below(S, b, a))
    return _require(S, ideal)


def generated_ideal(S: FiniteContactStructure, elements: Iterable[int]) -> FrozenSet[int]:
    top = 0
    for a in elements:
        top = S.join(top, a)
    return frozenset(b for b in S.enumerate() if S.leq(b, top))


def frame_join(S: FiniteContactStructure, I: Iterable[int], J: Iterable[int]) -> DeltaIdeal:
    I, J = _require(S, I), _require(S, J)
    return _require(S, generated_ideal(S, I | J))


def frame_meet(S: FiniteContactStructure, I: Iterable[int], J: Iterable[int]) -> DeltaIdeal:
    I, J = _require(S, I), _require(S, J)
    return _require(S, I & J)


def frame_ops(S: FiniteContactStructure, I: Iterable[int], J: Iterable[int]) -> Dict[str, DeltaIdeal]:
    return {"join": frame_join(S, I, J), "meet": frame_meet(S, I, J)}


def frame(S: FiniteContactStructure) -> List[DeltaIdeal]:
    """All δ-ideals; ideals of a finite algebra are principal down-sets, so these are filtered."""
    candidates = {generated_ideal(S, [c]) for c in S.enumerate() if S.bounded(c)}
    return sorted((I for I in candidates if is_delta_ideal(S, I)), key=lambda I: (len(I), sorted(I)))


def render_ideal(S: FiniteContactStructure, I: Iterable[int]) -> str:
    return "[" + ", ".join(S.render(a) for a in sorted(I)) + "]"


def iota(S: FiniteContactStructure, I: Iterable[int]) -> FrozenSet[int]:
    I = _require(S, I)
    return frozenset().union(*[lambda_g(S, a) for a in I])


def iota_inverse(S: FiniteContactStructure, U: Iterable[int]) -> DeltaIdeal:
    U = frozenset(U)
    if not dualize(S).topology.is_open(U):
        raise NotOpen(f"{sorted(U)} is not open in the dual space")
    return _require(S, frozenset(b for b in S.enumerate() if S.bounded(b) and lambda_g(S, b) <= U))


def is_prime_element(S: FiniteContactStructure, I: Iterable[int], ideals: Optional[List[DeltaIdeal]] = None) -> bool:
    I = _require(S, I)
    if I == bounded_elements(S):
        return False
    ideals = ideals if ideals is not None else frame(S)
    for J1, J2 in itertools.product(ideals, repeat=2):
        if J1 & J2 <= I and not (J1 <= I or J2 <= I):
            return False
    return True


def filter_from_prime(S: FiniteContactStructure, I: Iterable[int]) -> FrozenSet[int]:
    """V = {a ∈ IB : some b ∈ IB∖I has b ≪ a}."""
    outside = bounded_elements(S) - frozenset(I)
    return frozenset(a for a in S.enumerate() if S.bounded(a) and any(way_below(S, b, a) for b in outside))


def is_filter_in_bounded(S: FiniteContactStructure, V: Iterable[int]) -> bool:
    """Nonempty, upward closed inside IB, closed under meets."""
    V = frozenset(V)
    if not V or S.zero() in V:
        return False
    IB = bounded_elements(S)
    for a in V:
        for b in IB:
            if S.leq(a, b) and b not in V:
                return False
    return all(S.meet(a, b) in V for a, b in itertools.product(V, repeat=2))


class FrameReport(BaseModel):
    structure: str
    ideals: List[str]
    iota_isomorphism: bool
    principal_onto_regular_open: bool
    issues: List[str] = []


def verify_frame(S: FiniteContactStructure) -> FrameReport:
    """ι is an order isomorphism onto the dual opens, taking principal δ-ideals onto RO of the dual."""
    dual = dualize(S)
    topo = dual.topology
    ideals = frame(S)
    images = {I: iota(S, I) for I in ideals}
    issues = []
    for I, U in images.items():
        if not topo.is_open(U):
            issues.append(f"iota{render_ideal(S, I)} is not open")
        elif iota_inverse(S, U) != I:
            issues.append(f"iota_inverse does not undo iota at {render_ideal(S, I)}")
    if set(images.values()) != set(topo.opens):
        issues.append("iota is not onto the open sets")
    for I, J in itertools.product(ideals, repeat=2):
        if (I <= J) != (images[I] <= images[J]):
            issues.append(f"order not reflected between {render_ideal(S, I)} and {render_ideal(S, J)}")
    iso_ok = not issues

    regular_open = {U for U in topo.opens if topo.interior(topo.closure(U)) == U}
    principal = {iota(S, principal_delta_ideal(S, a)) for a in S.enumerate()}
    ro_ok = principal == regular_open
    if not ro_ok:
        issues.append("principal delta-ideals do not map onto the regular open sets")
    return FrameReport(
        structure=S.name,
        ideals=[render_ideal(S, I) for I in ideals],
        iota_isomorphism=iso_ok,
        principal_onto_regular_open=ro_ok,
        issues=issues,
    )


class BijectionReport(BaseModel):
    structure: str
    verdict: bool
    declined: bool = False
    pairs: List[Tuple[str, str]] = []
    issues: List[str] = []


def prime_from_cluster(S: FiniteContactStructure, sigma) -> DeltaIdeal:
    return bounded_elements(S) - frozenset(sigma)


def cluster_from_prime(S: FiniteContactStructure, I: Iterable[int]) -> FrozenSet[int]:
    """{a : a ρ d for every d ∈ IB∖I}."""
    outside = bounded_elements(S) - frozenset(I)
    return frozenset(a for a in S.enumerate() if all(S.contact(a, d) for d in outside))


def prime_cluster_bijection(S: FiniteContactStructure) -> BijectionReport:
    lca = check_axioms(S, "LCA", QuantifierStrategy.exhaustive())
    if not lca.passed:
        return BijectionReport(structure=S.name, verdict=False, declined=True,
                               issues=["LCA suite fails: " + ", ".join(lca.failed_axioms())])
    dual = dualize(S)
    ideals = frame(S)
    primes = {I for I in ideals if is_prime_element(S, I, ideals)}
    clusters = {dual.cluster(i) for i in dual.bounded_points}
    issues = []
    pairs = []
    forward = {}
    for sigma in sorted(clusters, key=sorted):
        I = prime_from_cluster(S, sigma)
        forward[sigma] = I
        pairs.append((render_ideal(S, sigma), render_ideal(S, I)))
        if I not in primes:
            issues.append(f"{render_ideal(S, I)} is not a prime element")
        if cluster_from_prime(S, I) != sigma:
            issues.append(f"cluster {render_ideal(S, sigma)} does not return from its prime element")
    for I in primes:
        sigma = cluster_from_prime(S, I)
        if sigma not in clusters:
            issues.append(f"prime {render_ideal(S, I)} gives a non-cluster")
        elif forward[sigma] != I:
            issues.append(f"prime {render_ideal(S, I)} does not return from its cluster")
        if not is_filter_in_bounded(S, filter_from_prime(S, I)):
            issues.append(f"V for prime {render_ideal(S, I)} is not a filter in IB")
    if len(set(forward.values())) != len(forward) or len(primes) != len(clusters):
        issues.append(f"{len(clusters)} bounded clusters against {len(primes)} prime elements")
    return BijectionReport(structure=S.name, verdict=not issues, pairs=pairs, issues=issues)
