"""Morphisms between region algebras: family checks, ˇ/˜, ⋄ composition, dual maps and the functor laws.

A morphism is either an explicit table between finite structures or the map
φ_f(G) = cl(f⁻¹(int G)) induced by a described map on a stock model. Tables
are checked exhaustively; map-induced morphisms are checked on seeded samples,
with joins over infinitely many regions handled by the dyadic-shrink scheme.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from described_maps import DescribedMap, NatMap, compose_maps, is_proper, phi_from_map
from delta_ideals import (
    bounded_elements,
    frame,
    iota,
    is_delta_ideal,
    is_filter_in_bounded,
    is_prime_element,
    principal_delta_ideal,
    render_ideal,
)
from duality_engine import dualize, lambda_g, t_map
from errors import (
    AxiomPreconditionFailed,
    InfiniteCarrier,
    NoAdjoint,
    NotComposable,
    PreconditionViolated,
    UnsupportedFamilyForModel,
)
from finite_models import FiniteContactStructure
from finite_spaces import SpaceMap, rc_algebra
from lca_core import (
    AlexandroffView,
    AxiomReport,
    QuantifierStrategy,
    RegionAlgebra,
    Verdict,
    alexandroff_contact,
    passes,
    way_below,
)
from region_models import INTERVAL_MODEL, NAT_MODEL, Point, cluster_membership
from settings import get_settings

logger = logging.getLogger(__name__)

DLC_FAMILIES = ("DLC1", "DLC2", "DLC3", "DLC4", "DLC5")
PAL_FAMILIES = ("PAL1", "PAL2", "PAL3", "PAL4", "PAL5", "PAL6")
DVAL_FAMILIES = ("DVAL1", "DVAL2", "DVAL3", "DVAL4")
SKELETAL_FAMILIES = ("CBH", "L1", "L2")
FAMILIES = DLC_FAMILIES + ("DLC3'", "DLC3S", "LC3", "LC3S") + PAL_FAMILIES + DVAL_FAMILIES + ("F1",) + SKELETAL_FAMILIES

# Either bundle makes S_σ′ a cluster trace and J_σ′ a prime δ-ideal.
HYPOTHESIS_BUNDLES: Dict[str, Tuple[str, ...]] = {
    "DLC1-4": ("DLC1", "DLC2", "DLC3", "DLC4"),
    "DLC1,2,LC3,4": ("DLC1", "DLC2", "LC3", "DLC4"),
}

MAP_UNSUPPORTED = set(DVAL_FAMILIES) | {"L2"}


@dataclass(frozen=True)
class TableMorphism:
    source: FiniteContactStructure
    target: FiniteContactStructure
    table: Tuple[int, ...]
    name: str = "phi"

    kind = "table"

    def __post_init__(self):
        if len(self.table) != 1 << self.source.atom_count:
            raise PreconditionViolated(f"{self.name} must list one image per element of {self.source.name}")
        if any(not 0 <= v <= self.target.full for v in self.table):
            raise PreconditionViolated(f"{self.name} has an image outside {self.target.name}")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def render(self) -> Dict[str, str]:
        return {self.source.render(a): self.target.render(v) for a, v in enumerate(self.table)}


@dataclass(frozen=True)
class MapInducedMorphism:
    f: DescribedMap
    name: str = "phi_f"

    kind = "map_induced"

    @property
    def model(self):
        return NAT_MODEL if isinstance(self.f, NatMap) else INTERVAL_MODEL

    @property
    def source(self):
        return self.model

    @property
    def target(self):
        return self.model

    def __call__(self, G):
        return phi_from_map(self.f, G)


Morphism = Union[TableMorphism, MapInducedMorphism]


def make_table(
    source: FiniteContactStructure,
    target: FiniteContactStructure,
    images: Union[Sequence[int], Callable[[int], int], Dict[int, int]],
    name: str = "phi",
) -> TableMorphism:
    if callable(images):
        table = tuple(images(a) for a in source.enumerate())
    elif isinstance(images, dict):
        missing = [source.render(a) for a in source.enumerate() if a not in images]
        if missing:
            raise PreconditionViolated(f"{name} is not total: no image for {', '.join(missing)}")
        table = tuple(images[a] for a in source.enumerate())
    else:
        table = tuple(images)
    return TableMorphism(source, target, table, name)


def identity_table(S: FiniteContactStructure) -> TableMorphism:
    return TableMorphism(S, S, tuple(S.enumerate()), name=f"id_{S.name}")


def induced_table(
    source: FiniteContactStructure, target: FiniteContactStructure, atom_map: Sequence[int], name: str = "phi"
) -> TableMorphism:
    """φ(a) = {q : atom_map[q] ∈ a}; the Boolean homomorphism dual to a map of atoms target → source."""
    if len(atom_map) != target.atom_count or any(not 0 <= p < source.atom_count for p in atom_map):
        raise PreconditionViolated("atom_map sends each target atom to a source atom")
    table = tuple(
        sum(1 << q for q, p in enumerate(atom_map) if a >> p & 1) for a in source.enumerate()
    )
    return TableMorphism(source, target, table, name)


def random_table(rng: np.random.Generator, source: FiniteContactStructure, target: FiniteContactStructure) -> TableMorphism:
    values = rng.integers(0, target.full + 1, size=1 << source.atom_count)
    return TableMorphism(source, target, tuple(int(v) for v in values), name="random")


def random_induced_table(
    rng: np.random.Generator, source: FiniteContactStructure, target: FiniteContactStructure
) -> TableMorphism:
    if source.atom_count == 0 and target.atom_count:
        raise PreconditionViolated("no atom map into an empty source")
    atom_map = [int(p) for p in rng.integers(0, max(source.atom_count, 1), size=target.atom_count)]
    return induced_table(source, target, atom_map, name="random_hom")


def _join_all(B: RegionAlgebra, items: Iterable[Any]):
    result = B.zero()
    for x in items:
        result = B.join(result, x)
    return result


def _compose(phi2: TableMorphism, phi1: TableMorphism) -> TableMorphism:
    if phi1.target != phi2.source:
        raise NotComposable(f"{phi1.name} lands in {phi1.target.name}, {phi2.name} starts at {phi2.source.name}")
    return TableMorphism(phi1.source, phi2.target, tuple(phi2(phi1(a)) for a in phi1.source.enumerate()),
                         name=f"{phi2.name}.{phi1.name}")


# Family predicates


class _Context:
    def __init__(self, phi: Morphism, depth: int, seed: int):
        self.phi = phi
        self.A = phi.source
        self.B = phi.target
        self.depth = depth
        self.finite = isinstance(phi, TableMorphism)
        self.rng = np.random.default_rng(seed)
        self._adjoint = None

    def bounded_candidates(self) -> List[Any]:
        if self.finite:
            return [a for a in self.A.enumerate() if self.A.bounded(a)]
        return list(self.A.truncations(self.A.one(), self.depth))

    def join_of_images(self, a, below: Callable[[Any, Any], bool]):
        A = self.A
        return _join_all(self.B, (self.phi(b) for b in A.enumerate() if below(b, a)))

    def shrink_scheme(self, F) -> bool:
        """φ(G) ≤ φ(F) along the shrink family, and interior points of φ(F) are reached by some φ(G)."""
        model, phi = self.A, self.phi
        target = phi(F)
        images = [phi(G) for G in model.shrink_family(F, self.depth)]
        if any(not model.leq(img, target) for img in images):
            return False
        for x in model.interior_points(target, self.rng, 3):
            if not any(x in img for img in images):
                return False
        return True

    def adjoint(self):
        if self._adjoint is None:
            self._adjoint = left_adjoint(self.phi)
        return self._adjoint


def _dlc3_conclusion(ctx: _Context, a, b) -> bool:
    A, B, phi = ctx.A, ctx.B, ctx.phi
    return way_below(B, B.complement(phi(A.complement(a))), phi(b))


def _lc3_conclusion(ctx: _Context, p1, p2) -> bool:
    A, B, phi = ctx.A, ctx.B, ctx.phi
    (a1, b1), (a2, b2) = p1, p2
    return way_below(B, phi(A.join(a1, a2)), B.join(phi(b1), phi(b2)))


def _dlc1(ctx):
    return ctx.phi(ctx.A.zero()) == ctx.B.zero()


def _dlc2(ctx, a, b):
    return ctx.phi(ctx.A.meet(a, b)) == ctx.B.meet(ctx.phi(a), ctx.phi(b))


def _dlc4(ctx, b):
    if not ctx.B.bounded(b):
        return True
    found = any(ctx.B.leq(b, ctx.phi(a)) for a in ctx.bounded_candidates())
    return True if found else (False if ctx.finite else None)


def _dlc5(ctx, a):
    if not ctx.finite:
        return ctx.shrink_scheme(a)
    A = ctx.A
    return ctx.phi(a) == ctx.join_of_images(a, lambda b, c: A.bounded(b) and way_below(A, b, c))


def _pal6(ctx, a):
    if not ctx.finite:
        return ctx.shrink_scheme(a)
    view = AlexandroffView(ctx.A)
    return ctx.phi(a) == ctx.join_of_images(a, lambda b, c: way_below(view, b, c))


def _dval3(ctx, a, b):
    A, B, phi = AlexandroffView(ctx.A), AlexandroffView(ctx.B), ctx.phi
    if not way_below(A, a, b):
        return True
    return way_below(B, B.complement(phi(A.complement(a))), phi(b))


def _pal5(ctx, a):
    return not ctx.A.bounded(a) or ctx.B.bounded(ctx.phi(a))


def _f1(ctx, a, b):
    return not alexandroff_contact(ctx.B, ctx.phi(a), ctx.phi(b)) or alexandroff_contact(ctx.A, a, b)


def _l1(ctx, a, b):
    return not ctx.B.contact(ctx.phi(a), ctx.phi(b)) or ctx.A.contact(a, b)


def _l2(ctx, b):
    return not ctx.B.bounded(b) or ctx.A.bounded(ctx.adjoint()(b))


def _cbh(ctx, a, b):
    A, B, phi = ctx.A, ctx.B, ctx.phi
    return (
        phi(A.join(a, b)) == B.join(phi(a), phi(b))
        and phi(A.meet(a, b)) == B.meet(phi(a), phi(b))
        and phi(A.complement(a)) == B.complement(phi(a))
        and phi(A.one()) == B.one()
    )


def _premise_bounded_a(ctx, a, b):
    return ctx.A.bounded(a) and way_below(ctx.A, a, b)


def _premise_bounded_both(ctx, a, b):
    return ctx.A.bounded(a) and ctx.A.bounded(b) and way_below(ctx.A, a, b)


def _premise_any(ctx, a, b):
    return way_below(ctx.A, a, b)


@dataclass(frozen=True)
class _Family:
    """``arity`` arguments drawn from ``domain``; pair domains quantify over (a, b) with a premise."""

    name: str
    arity: int
    holds: Callable[..., Optional[bool]]
    domain: Literal["source", "target", "pairs"] = "source"
    premise: Optional[Callable[..., bool]] = None
    bounded_args: bool = False


def _implication(premise, conclusion):
    return lambda ctx, a, b: not premise(ctx, a, b) or conclusion(ctx, a, b)


_FAMILY_TABLE: Dict[str, _Family] = {}


def _register(*names: str, **spec):
    for name in names:
        _FAMILY_TABLE[name] = _Family(name=name, **spec)


_register("DLC1", "PAL1", "DVAL1", arity=0, holds=_dlc1)
_register("DLC2", "PAL2", "DVAL2", arity=2, holds=_dlc2)
_register("DLC3", "PAL3", arity=2, holds=_implication(_premise_bounded_a, _dlc3_conclusion), bounded_args=True)
_register("DLC3'", arity=2, holds=_implication(_premise_bounded_both, _dlc3_conclusion), bounded_args=True)
_register("DLC3S", arity=2, holds=_implication(_premise_any, _dlc3_conclusion))
_register("DVAL3", arity=2, holds=_dval3)
_register("DLC4", "PAL4", arity=1, holds=_dlc4, domain="target")
_register("DLC5", arity=1, holds=_dlc5)
_register("PAL5", arity=1, holds=_pal5, bounded_args=True)
_register("PAL6", arity=1, holds=_pal6)
_register("LC3", arity=2, holds=_lc3_conclusion, domain="pairs", premise=_premise_bounded_a, bounded_args=True)
_register("LC3S", arity=2, holds=_lc3_conclusion, domain="pairs", premise=_premise_any)
_register("F1", arity=2, holds=_f1)
_register("L1", arity=2, holds=_l1)
_register("L2", arity=1, holds=_l2, domain="target")
_register("CBH", arity=2, holds=_cbh)
_register("DVAL4", arity=1, holds=_pal6)


def family_names() -> Tuple[str, ...]:
    return FAMILIES


def _render_args(ctx: _Context, family: _Family, args: Tuple[Any, ...]) -> List[str]:
    algebra = ctx.B if family.domain == "target" else ctx.A
    flat = list(itertools.chain.from_iterable(args)) if family.domain == "pairs" else list(args)
    return [algebra.render(x) for x in flat]


def _sort_args(ctx: _Context, family: _Family, args):
    algebra = ctx.B if family.domain == "target" else ctx.A
    flat = list(itertools.chain.from_iterable(args)) if family.domain == "pairs" else list(args)
    return tuple(algebra.sort_key(x) for x in flat)


def _verdict(ctx, family: _Family, failures, undecided, checked, note="") -> Verdict:
    if failures:
        worst = min(failures, key=lambda w: _sort_args(ctx, family, w))
        return Verdict(axiom=family.name, status="fails", witness=worst,
                       rendered=_render_args(ctx, family, worst), checked=checked, note=note)
    if undecided:
        first = min(undecided, key=lambda w: _sort_args(ctx, family, w))
        return Verdict(axiom=family.name, status="inconclusive", rendered=_render_args(ctx, family, first),
                       checked=checked, note=note or "no witness found within the search depth")
    return Verdict(axiom=family.name, status="holds", checked=checked, note=note)


def _run(ctx: _Context, family: _Family, tuples: Iterable[Tuple[Any, ...]]) -> Verdict:
    failures, undecided, checked = [], [], 0
    for args in tuples:
        checked += 1
        if family.domain == "pairs" and not all(family.premise(ctx, *p) for p in args):
            continue
        result = family.holds(ctx, *args)
        if result is False:
            failures.append(args)
        elif result is None:
            undecided.append(args)
    return _verdict(ctx, family, failures, undecided, checked)


def _exhaustive_tuples(ctx: _Context, family: _Family):
    if family.domain == "pairs":
        pairs = [(a, b) for a in ctx.A.enumerate() for b in ctx.A.enumerate() if family.premise(ctx, a, b)]
        return itertools.product(pairs, repeat=family.arity)
    elements = ctx.B.enumerate() if family.domain == "target" else ctx.A.enumerate()
    return itertools.product(elements, repeat=family.arity)


def _draw_pair(ctx: _Context, draw, bounded: bool):
    A = ctx.A
    a = draw()
    if bounded:
        a = A.bounded_part(a)
    wider = A.widen(a)
    extra = draw()
    if bounded:
        extra = A.bounded_part(extra)
    return a, (extra if wider is None else A.join(wider, extra))


def _sampled_tuples(ctx: _Context, family: _Family, count: int, seed: int):
    algebra = ctx.B if family.domain == "target" else ctx.A
    stream = algebra.sample_stream(seed)
    draw = lambda: next(stream)
    if family.arity == 0:
        yield ()
        return
    for i in range(count):
        steer = i % 2 == 1
        if family.domain == "pairs":
            yield tuple(_draw_pair(ctx, draw, family.bounded_args) for _ in range(family.arity))
        elif family.arity == 2 and steer:
            yield _draw_pair(ctx, draw, family.bounded_args)
        elif family.domain == "target" or (family.bounded_args and steer):
            yield tuple(algebra.bounded_part(draw()) for _ in range(family.arity))
        else:
            yield tuple(draw() for _ in range(family.arity))


def _family_seed(seed: int, family: str, salt: int = 0) -> int:
    index = FAMILIES.index(family) if family in FAMILIES else len(FAMILIES)
    return (seed * 1_000_003 + index * 7919 + salt) % (2**63)


def _strategy_for(phi: Morphism, strategy: Optional[QuantifierStrategy]) -> QuantifierStrategy:
    if strategy is not None:
        return strategy
    if isinstance(phi, TableMorphism):
        return QuantifierStrategy.exhaustive()
    settings = get_settings()
    return QuantifierStrategy.sampled(settings.morphism_samples, settings.seed, settings.depth)


@lru_cache(maxsize=4096)
def _family_verdict(phi: Morphism, name: str, strategy_json: str) -> Verdict:
    strategy = QuantifierStrategy.model_validate_json(strategy_json)
    family = _FAMILY_TABLE[name]
    ctx = _Context(phi, strategy.witness_depth, _family_seed(strategy.seed, name, salt=2))
    if name == "L2":
        try:
            ctx.adjoint()
        except NoAdjoint as exc:
            return Verdict(axiom=name, status="fails", note=f"no left adjoint: {exc}")
    if strategy.mode == "exhaustive":
        if not ctx.finite:
            raise PreconditionViolated(f"{phi.name} has an infinite carrier; use a sampled strategy")
        tuples = _exhaustive_tuples(ctx, family)
    else:
        tuples = _sampled_tuples(ctx, family, strategy.sample_count, _family_seed(strategy.seed, name))
    verdict = _run(ctx, family, tuples)
    logger.debug("%s on %s: %s", name, phi.name, verdict.status)
    return verdict


def check_morphism(
    phi: Morphism, families: Iterable[str] = DLC_FAMILIES, strategy: Optional[QuantifierStrategy] = None
) -> AxiomReport:
    families = list(families)
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown morphism families: {', '.join(unknown)}")
    if isinstance(phi, MapInducedMorphism):
        unsupported = [f for f in families if f in MAP_UNSUPPORTED]
        if unsupported:
            raise UnsupportedFamilyForModel(
                f"{', '.join(unsupported)} cannot be checked on the map-induced {phi.name}"
            )
    strategy = _strategy_for(phi, strategy)
    key = strategy.model_dump_json()
    verdicts = [_family_verdict(phi, name, key) for name in families]
    return AxiomReport(
        suite=",".join(families),
        algebra=phi.name,
        mode=strategy.mode,
        verdicts=verdicts,
        samples_used=0 if strategy.mode == "exhaustive" else strategy.sample_count,
        seed=strategy.seed,
    )


def satisfies(phi: Morphism, families: Iterable[str], strategy: Optional[QuantifierStrategy] = None) -> bool:
    return check_morphism(phi, families, strategy).passed


def check_hypothesis_bundle(phi: Morphism, bundle: str, strategy: Optional[QuantifierStrategy] = None) -> AxiomReport:
    if bundle not in HYPOTHESIS_BUNDLES:
        raise ValueError(f"unknown hypothesis bundle {bundle!r}; expected one of {', '.join(HYPOTHESIS_BUNDLES)}")
    return check_morphism(phi, HYPOTHESIS_BUNDLES[bundle], strategy)


# ˇ, ˜ and ⋄


def check_operation(psi: Morphism, variant: Literal["check", "tilde"] = "check") -> TableMorphism:
    """ψˇ(a) = ⋁{ψ(b) : b ∈ IB, b ≪ a};  ψ˜(a) = ⋁{ψ(b) : b ≪_{C_ρ} a}."""
    if not isinstance(psi, TableMorphism):
        raise InfiniteCarrier(f"{psi.name}: the {variant} join ranges over infinitely many regions")
    A, B = psi.source, psi.target
    if variant == "check":
        below = lambda b, a: A.bounded(b) and way_below(A, b, a)
    elif variant == "tilde":
        view = AlexandroffView(A)
        below = lambda b, a: way_below(view, b, a)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    table = tuple(_join_all(B, (psi(b) for b in A.enumerate() if below(b, a))) for a in A.enumerate())
    return TableMorphism(A, B, table, name=f"{variant}({psi.name})")


def diamond(phi2: Morphism, phi1: Morphism) -> TableMorphism:
    """φ₂ ⋄ φ₁ = (φ₂ ∘ φ₁)ˇ."""
    if not isinstance(phi1, TableMorphism) or not isinstance(phi2, TableMorphism):
        raise InfiniteCarrier("diamond composition is materialized for finite tables only")
    result = check_operation(_compose(phi2, phi1), "check")
    return TableMorphism(result.source, result.target, result.table, name=f"{phi2.name}<>{phi1.name}")


def composition_identities(phi2: TableMorphism, phi1: TableMorphism) -> Dict[str, bool]:
    """(φ₂ˇ∘φ₁)ˇ and (φ₂∘φ₁ˇ)ˇ against (φ₂∘φ₁)ˇ."""
    plain = check_operation(_compose(phi2, phi1)).table
    left = check_operation(_compose(check_operation(phi2), phi1)).table
    right = check_operation(_compose(phi2, check_operation(phi1))).table
    return {"outer_check": left == plain, "inner_check": right == plain}


# Left adjoint


def left_adjoint(phi: Morphism) -> TableMorphism:
    """φ_Λ(b) = ⋀{a : b ≤ φ(a)}, asserted to satisfy b ≤ φ(a) ⇔ φ_Λ(b) ≤ a."""
    if not isinstance(phi, TableMorphism):
        raise InfiniteCarrier(f"{phi.name}: left adjoints are computed on finite tables")
    A, B = phi.source, phi.target
    elements = A.enumerate()
    for a, b in itertools.product(elements, repeat=2):
        if A.leq(a, b) and not B.leq(phi(a), phi(b)):
            raise NoAdjoint(f"{phi.name} is not monotone at {A.render(a)} <= {A.render(b)}")
    if phi(A.one()) != B.one():
        raise NoAdjoint(f"{phi.name} does not preserve 1")
    table = []
    for b in B.enumerate():
        meet = A.one()
        for a in elements:
            if B.leq(b, phi(a)):
                meet = A.meet(meet, a)
        table.append(meet)
    adjoint = TableMorphism(B, A, tuple(table), name=f"{phi.name}_L")
    for a, b in itertools.product(elements, B.enumerate()):
        if B.leq(b, phi(a)) != A.leq(adjoint(b), a):
            raise NoAdjoint(f"Galois property fails at a={A.render(a)}, b={B.render(b)}")
    return adjoint


# Dual maps


class TraceEntry(BaseModel):
    target_point: int
    S: List[str]
    V: List[str]
    J: List[str]
    source_point: Optional[int] = None


class DualMapReport(BaseModel):
    morphism: str
    hypotheses: str
    point_map: Dict[int, Optional[int]]
    traces: List[TraceEntry]
    checks: Dict[str, bool]
    issues: List[str] = []

    @property
    def verdict(self) -> bool:
        return not self.issues and all(self.checks.values())


def _hypotheses_met(phi: Morphism, strategy: Optional[QuantifierStrategy]) -> str:
    failures = {}
    for bundle in HYPOTHESIS_BUNDLES:
        report = check_hypothesis_bundle(phi, bundle, strategy)
        if report.status != "fails":
            return bundle
        failures[bundle] = report.failed_axioms()
    detail = "; ".join(f"{b}: {', '.join(f)} fail" for b, f in failures.items())
    raise AxiomPreconditionFailed(f"{phi.name} meets no hypothesis bundle ({detail})")


def d_phi(phi: TableMorphism, a: int) -> frozenset:
    """D_φ(a) = ⋃{I_{φ(b)} : b ∈ IB, b ≪ a}, a subset of the target."""
    A, B = phi.source, phi.target
    parts = [principal_delta_ideal(B, phi(b)) for b in A.enumerate() if A.bounded(b) and way_below(A, b, a)]
    return frozenset().union(*parts)


def _dual_map_table(phi: TableMorphism) -> DualMapReport:
    bundle = _hypotheses_met(phi, None)
    A, B = phi.source, phi.target
    dual_a, dual_b = dualize(A), dualize(B)
    for side, dual in (("source", dual_a), ("target", dual_b)):
        if not dual.lca_passed:
            raise AxiomPreconditionFailed(f"the {side} {dual.structure.name} fails the LCA suite")
    IB = bounded_elements(A)
    ideals = frame(A)
    elements = A.enumerate()
    wb = {(a, b): way_below(A, a, b) for a in elements for b in elements}
    point_map: Dict[int, Optional[int]] = {}
    traces, issues = [], []
    checks = {"alternate_form": True, "prime_ideal": True, "filter": True, "cluster": True}
    for j in dual_b.bounded_points:
        sp = dual_b.cluster(j)
        S = frozenset(a for a in IB if all(phi(b) in sp for b in elements if wb[a, b]))
        S_alt = frozenset(
            a for a in IB if all(B.complement(phi(A.complement(b))) in sp for b in elements if wb[a, b])
        )
        V = frozenset(a for a in IB if any(wb[b, a] for b in S))
        J = IB - S
        sigma = frozenset(a for a in elements if all(A.contact(a, d) for d in S))
        i = dual_a.index_of(sigma)
        point_map[j] = i
        traces.append(TraceEntry(
            target_point=j,
            S=[A.render(a) for a in sorted(S)],
            V=[A.render(a) for a in sorted(V)],
            J=[A.render(a) for a in sorted(J)],
            source_point=i,
        ))
        if S != S_alt:
            checks["alternate_form"] = False
            issues.append(f"the two forms of S disagree at point {j}")
        if not (is_delta_ideal(A, J) and is_prime_element(A, J, ideals)):
            checks["prime_ideal"] = False
            issues.append(f"J = {render_ideal(A, J)} at point {j} is not a prime delta-ideal")
        if not is_filter_in_bounded(A, V):
            checks["filter"] = False
            issues.append(f"V = {render_ideal(A, V)} at point {j} is not a filter in IB")
        if i is None or i not in dual_a.bounded_points or frozenset(a for a in sigma if A.bounded(a)) != S:
            checks["cluster"] = False
            issues.append(f"point {j} does not land on a bounded cluster with trace S")

    checks["d_phi_ideals"] = True
    checks["continuity"] = True
    X, Y = dual_a.topology, dual_b.topology
    if checks["cluster"]:
        preimage = lambda U: frozenset(j for j, i in point_map.items() if i in U)
        for a in elements:
            D = d_phi(phi, a)
            if not is_delta_ideal(B, D):
                checks["d_phi_ideals"] = False
                issues.append(f"D({A.render(a)}) is not a delta-ideal")
                continue
            if A.bounded(a) and preimage(X.interior(lambda_g(A, a))) != iota(B, D):
                checks["continuity"] = False
                issues.append(f"preimage of int lambda({A.render(a)}) differs from iota(D({A.render(a)}))")
        for U in X.opens:
            if not Y.is_open(preimage(U)):
                checks["continuity"] = False
                issues.append(f"preimage of open {sorted(U)} is not open")
    return DualMapReport(
        morphism=phi.name, hypotheses=bundle, point_map=point_map, traces=traces, checks=checks, issues=issues
    )


class SymbolicDualMap:
    """f_{φ_f} on the point clusters of a stock model: σ_x ↦ σ_{f(x)}."""

    def __init__(self, phi: MapInducedMorphism, depth: int, hypotheses: str):
        self.phi = phi
        self.model = phi.model
        self.depth = depth
        self.hypotheses = hypotheses

    def image(self, point: Point) -> Point:
        return Point(self.phi.f.evaluate(point.x))

    def trace_contains(self, point: Point, F) -> bool:
        """F ∈ S_σ′ for σ′ = σ_x: F bounded and x ∈ φ(G) for the sampled G ≫ F."""
        if not self.model.bounded(F):
            return False
        return all(cluster_membership(self.model, point, self.phi(G)) for G in self.model.widen_family(F, self.depth))


def dual_map(phi: Morphism, strategy: Optional[QuantifierStrategy] = None):
    if isinstance(phi, TableMorphism):
        return _dual_map_table(phi)
    strategy = _strategy_for(phi, strategy)
    bundle = _hypotheses_met(phi, strategy)
    return SymbolicDualMap(phi, strategy.witness_depth, bundle)


# Map-induced morphisms


def morphism_from_map(f: Union[SpaceMap, DescribedMap], name: Optional[str] = None) -> Morphism:
    if isinstance(f, SpaceMap):
        X, Y = f.source, f.target
        rc_x, rc_y = rc_algebra(X), rc_algebra(Y)
        source, target = rc_y.to_structure(), rc_x.to_structure()
        table = []
        for m in source.enumerate():
            G = rc_y.decode(m)
            table.append(rc_x.encode(X.closure(f.preimage(Y.interior(G)))))
        return TableMorphism(source, target, tuple(table), name=name or f"phi_{f.name}")
    return MapInducedMorphism(f, name=name or f"phi_{f.name}")


class FunctorReport(BaseModel):
    mode: str
    algebra_law: bool
    dual_law: Optional[bool] = None
    checked: int = 0
    issues: List[str] = []

    @property
    def verdict(self) -> bool:
        return self.algebra_law and self.dual_law is not False


def verify_functor_laws(f, g, seed: int = 7, regions: int = 100, depth: int = 20) -> FunctorReport:
    """Λᵗ(g∘f) = Λᵗ(f) ⋄ Λᵗ(g), and on finite duals Λᵃ(φ₂⋄φ₁) = Λᵃ(φ₁)∘Λᵃ(φ₂)."""
    if isinstance(f, SpaceMap) and isinstance(g, SpaceMap):
        return _functor_finite(f, g)
    if isinstance(f, SpaceMap) or isinstance(g, SpaceMap):
        raise NotComposable("cannot compose a finite-space map with a described map")
    return _functor_sampled(f, g, seed, regions, depth)


def _functor_finite(f: SpaceMap, g: SpaceMap) -> FunctorReport:
    if f.target != g.source:
        raise NotComposable(f"{f.name} lands in {f.target.name}, {g.name} starts at {g.source.name}")
    phi_f, phi_g = morphism_from_map(f), morphism_from_map(g)
    phi_h = morphism_from_map(f.then(g))
    composite = diamond(phi_f, phi_g)
    issues = []
    algebra_law = phi_h.table == composite.table
    if not algebra_law:
        issues.append(f"phi of {g.name}.{f.name} differs from phi_{f.name} <> phi_{g.name}")
    dual_law = None
    try:
        outer = _dual_map_table(composite).point_map
        first = _dual_map_table(phi_f).point_map
        second = _dual_map_table(phi_g).point_map
        chained = {x: (None if first[x] is None else second.get(first[x])) for x in first}
        dual_law = chained == outer
        if not dual_law:
            issues.append("dual of the composite differs from the composite of duals")
    except AxiomPreconditionFailed as exc:
        issues.append(f"dual law not checked: {exc}")
    return FunctorReport(mode="exhaustive", algebra_law=algebra_law, dual_law=dual_law,
                         checked=len(phi_h.table), issues=issues)


def _functor_sampled(f: DescribedMap, g: DescribedMap, seed: int, regions: int, depth: int) -> FunctorReport:
    h = compose_maps(g, f)
    phi_f, phi_g, phi_h = (MapInducedMorphism(m) for m in (f, g, h))
    model = phi_h.model
    rng = np.random.default_rng(seed)
    stream = model.sample_stream(seed)
    issues = []
    for _ in range(regions):
        F = next(stream)
        target = phi_h(F)
        if isinstance(f, NatMap):
            if phi_f(phi_g(F)) != target:
                issues.append(f"composite differs at {model.render(F)}")
            continue
        images = [phi_f(phi_g(G)) for G in model.shrink_family(F, depth)]
        if any(not model.leq(img, target) for img in images):
            issues.append(f"lower bound fails at {model.render(F)}")
            continue
        for x in model.interior_points(target, rng, 3):
            if not any(x in img for img in images):
                issues.append(f"point {x} of phi_h({model.render(F)}) not reached within depth {depth}")
                break
    return FunctorReport(mode="sampled", algebra_law=not issues, checked=regions, issues=issues)


class NaturalityReport(BaseModel):
    mode: str
    square: Literal["algebra", "space", "stock"]
    verdict: bool
    checked: int = 0
    issues: List[str] = []


def verify_naturality(subject, seed: int = 7, points: int = 200, regions: int = 30, depth: int = 20) -> NaturalityReport:
    if isinstance(subject, TableMorphism):
        return _naturality_algebra(subject)
    if isinstance(subject, SpaceMap):
        return _naturality_space(subject)
    phi = subject if isinstance(subject, MapInducedMorphism) else MapInducedMorphism(subject)
    return _naturality_stock(phi, seed, points, regions, depth)


def _naturality_algebra(phi: TableMorphism) -> NaturalityReport:
    """λᵍ_B(φ(a)) = cl(f_φ⁻¹(int λᵍ_A(a))) for every a."""
    if not satisfies(phi, DLC_FAMILIES):
        raise AxiomPreconditionFailed(f"{phi.name} is not a DLC-morphism")
    dual = _dual_map_table(phi)
    A, B = phi.source, phi.target
    X, Y = dualize(A).topology, dualize(B).topology
    issues = []
    for a in A.enumerate():
        inner = X.interior(lambda_g(A, a))
        rhs = Y.closure(j for j, i in dual.point_map.items() if i in inner)
        if lambda_g(B, phi(a)) != rhs:
            issues.append(f"square fails at {A.render(a)}")
    return NaturalityReport(mode="exhaustive", square="algebra", verdict=not issues,
                            checked=len(A.enumerate()), issues=issues)


def _naturality_space(f: SpaceMap) -> NaturalityReport:
    """t_Y(f(x)) = f′(t_X(x)) with f′ the dual of φ_f."""
    phi = morphism_from_map(f)
    f_dual = _dual_map_table(phi).point_map
    t_x, t_y = t_map(f.source).table, t_map(f.target).table
    issues = []
    for x in f.source.points:
        start = t_x[str(x)]
        image = None if start is None else f_dual.get(start)
        if image is None or image != t_y[str(f(x))]:
            issues.append(f"square fails at point {x}")
    return NaturalityReport(mode="exhaustive", square="space", verdict=not issues,
                            checked=len(f.source.points), issues=issues)


def _naturality_stock(phi: MapInducedMorphism, seed: int, points: int, regions: int, depth: int) -> NaturalityReport:
    model = phi.model
    rng = np.random.default_rng(seed)
    sample = model.sample_points(rng, points)
    stream = model.sample_stream(seed)
    bounded = []
    while len(bounded) < regions:
        F = next(stream)
        if model.bounded(F) and not F.is_empty:
            bounded.append(F)
    symbolic = SymbolicDualMap(phi, depth, "sampled")
    issues = []
    for x in sample:
        here, there = Point(x), symbolic.image(Point(x))
        for F in bounded:
            if cluster_membership(model, there, F) != symbolic.trace_contains(here, F):
                issues.append(f"trace differs at point {x}, region {model.render(F)}")
                break
    return NaturalityReport(mode="sampled", square="stock", verdict=not issues,
                            checked=len(sample) * len(bounded), issues=issues)


# Classification and lemma battery


class Classification(BaseModel):
    morphism: str
    is_DLC: bool
    is_PAL: bool
    is_DVAL: Optional[bool] = None
    is_skeletal: Optional[bool] = None
    degenerate_perfect: bool = False
    notes: List[str] = []
    verdicts: List[Verdict] = []


def classify(phi: Morphism, strategy: Optional[QuantifierStrategy] = None) -> Classification:
    if isinstance(phi, MapInducedMorphism):
        report = check_morphism(phi, DLC_FAMILIES + PAL_FAMILIES, strategy)
        is_dlc = all(report.verdict(n).status == "holds" for n in DLC_FAMILIES)
        pal5 = report.verdict("PAL5").status == "holds"
        notes = ["DVAL needs IB = B, which the stock models lack", "skeletal families need a left adjoint"]
        if pal5 != is_proper(phi.f):
            notes.append(f"PAL5 verdict {pal5} disagrees with properness of {phi.f.name}")
        is_pal = is_dlc and all(report.verdict(n).status == "holds" for n in PAL_FAMILIES)
        return Classification(morphism=phi.name, is_DLC=is_dlc, is_PAL=is_pal, is_DVAL=False,
                              notes=notes, verdicts=report.verdicts)

    A, B = phi.source, phi.target
    report = check_morphism(phi, FAMILIES, strategy)
    holds = lambda names: all(report.verdict(n).status == "holds" for n in names)
    notes = []
    compact = A.bound_mask == A.full and B.bound_mask == B.full
    is_dval = holds(DVAL_FAMILIES) if compact else None
    if not compact:
        notes.append("DVAL needs IB = B on both sides")
    is_dlc, is_skeletal = holds(DLC_FAMILIES), holds(SKELETAL_FAMILIES)
    if is_skeletal and not is_dlc:
        notes.append("skeletal morphism fails a DLC family")
    degenerate = report.verdict("PAL5").status == "holds"
    if degenerate:
        notes.append("PAL5 on a finite carrier: every map of finite duals is perfect")
    return Classification(morphism=phi.name, is_DLC=is_dlc, is_PAL=holds(PAL_FAMILIES), is_DVAL=is_dval,
                          is_skeletal=is_skeletal, degenerate_perfect=degenerate, notes=notes,
                          verdicts=report.verdicts)


class LemmaCheck(BaseModel):
    name: str
    hypotheses: List[str]
    applicable: bool
    holds: Optional[bool] = None


def _monotone(phi: TableMorphism) -> bool:
    A, B = phi.source, phi.target
    return all(B.leq(phi(a), phi(b)) for a in A.enumerate() for b in A.enumerate() if A.leq(a, b))


def lemma_battery(phi: TableMorphism) -> List[LemmaCheck]:
    """Derived identities, each asserted only when both sides are LCAs and its hypotheses hold for ``phi``."""
    A, B = phi.source, phi.target
    exhaustive = QuantifierStrategy.exhaustive()
    lca = passes(A, "LCA", exhaustive) and passes(B, "LCA", exhaustive)
    if not lca:
        logger.info("lemma battery on %s: %s or %s fails the LCA suite", phi.name, A.name, B.name)
    report = check_morphism(phi, FAMILIES)
    status = {v.axiom: v.status for v in report.verdicts}
    monotone = _monotone(phi)
    check = check_operation(phi, "check")

    def assumed(*names):
        return lca and all(status[n] == "holds" for n in names)

    cases: List[Tuple[str, List[str], bool, Callable[[], bool]]] = [
        ("monotone", ["DLC2"], assumed("DLC2"), lambda: monotone),
        ("complement_bound", ["DLC1", "DLC2"], assumed("DLC1", "DLC2"),
         lambda: all(B.leq(phi(A.complement(a)), B.complement(phi(a))) for a in A.enumerate())),
        ("top_preserved", ["DLC2", "DLC4"], assumed("DLC2", "DLC4"), lambda: phi(A.one()) == B.one()),
        ("check_is_dlc2_dlc5", ["DLC2"], assumed("DLC2"), lambda: satisfies(check, ["DLC2", "DLC5"])),
        ("check_fixes_dlc5", ["DLC5"], assumed("DLC5"), lambda: check.table == phi.table),
        ("check_idempotent", ["DLC2"], assumed("DLC2"),
         lambda: check_operation(check, "check").table == check.table),
        ("check_below", ["monotone"], lca and monotone,
         lambda: all(B.leq(check(a), phi(a)) for a in A.enumerate())),
        ("lc3_from_dlc3", ["DLC1", "DLC2", "DLC3"], assumed("DLC1", "DLC2", "DLC3"),
         lambda: status["LC3"] == "holds"),
        ("strong_forms_agree", ["DLC1", "DLC2", "DLC4", "DLC5"], assumed("DLC1", "DLC2", "DLC4", "DLC5"),
         lambda: len({status[n] for n in ("DLC3", "DLC3S", "LC3", "LC3S")}) == 1),
        ("check_equals_tilde", ["DLC2", "DLC4"], assumed("DLC2", "DLC4"),
         lambda: check.table == check_operation(phi, "tilde").table),
    ]
    results = []
    for name, hypotheses, applicable, claim in cases:
        results.append(LemmaCheck(name=name, hypotheses=["LCA", *hypotheses], applicable=applicable,
                                  holds=claim() if applicable else None))
    return results

