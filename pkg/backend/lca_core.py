"""Region-algebra contract, derived relations and the axiom verification engine.

Every model (finite structures, the two stock infinite models, regular closed
algebras of finite spaces) implements :class:`RegionAlgebra`. The relations
``≪`` and ``C_ρ`` are never stored; they are derived from ``contact`` and
``bounded`` on demand.
"""
import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Iterator, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from errors import ExhaustiveUnavailable

logger = logging.getLogger(__name__)

Element = Any

SUITES = ("BOOL", "CA", "LL", "NCA", "LCA", "CON")


class RegionAlgebra(ABC):
    """The carrier (B, 0, 1, ∨, ∧, *, ρ, IB) with optional witness oracles."""

    carrier_kind: str = "finite"
    name: str = "algebra"

    @abstractmethod
    def zero(self) -> Element: ...

    @abstractmethod
    def one(self) -> Element: ...

    @abstractmethod
    def join(self, a: Element, b: Element) -> Element: ...

    @abstractmethod
    def meet(self, a: Element, b: Element) -> Element: ...

    @abstractmethod
    def complement(self, a: Element) -> Element: ...

    @abstractmethod
    def contact(self, a: Element, b: Element) -> bool: ...

    @abstractmethod
    def bounded(self, a: Element) -> bool: ...

    def leq(self, a: Element, b: Element) -> bool:
        return self.join(a, b) == b

    def enumerate(self) -> Optional[List[Element]]:
        """Full element list for finite carriers, else None."""
        return None

    def sample_stream(self, seed: int, size_hint: int = 3) -> Iterator[Element]:
        elements = self.enumerate()
        if not elements:
            raise ExhaustiveUnavailable(f"{self.name} has neither an enumerator nor a sampler")
        rng = np.random.default_rng(seed)
        while True:
            yield elements[int(rng.integers(len(elements)))]

    # Witness oracles. Each returns None when the model has no oracle.

    def interpolate(self, a: Element, c: Element) -> Optional[Element]:
        """b ∈ IB with a ≪ b ≪ c, for a ∈ IB and a ≪ c."""
        return None

    def separate(self, a: Element, c: Element) -> Optional[Element]:
        """b with a ≪ b ≪ c, for any a ≪ c."""
        if self.bounded(a):
            return self.interpolate(a, c)
        return None

    def shrink(self, a: Element) -> Optional[Element]:
        """b ∈ IB, b ≠ 0, with b ≪ a, for a ≠ 0."""
        return None

    def widen(self, a: Element) -> Optional[Element]:
        """Some b with a ≪ b."""
        return None

    def truncations(self, b: Element, depth: int) -> Iterable[Element]:
        """Bounded pieces of b, growing with the index."""
        return ()

    def bounded_part(self, a: Element) -> Element:
        if self.bounded(a):
            return a
        for piece in self.truncations(a, 1):
            return piece
        return self.zero()

    def render(self, a: Element) -> str:
        return str(a)

    def sort_key(self, a: Element) -> Any:
        return self.render(a)


class AlgebraView(RegionAlgebra):
    """Delegates everything to ``base``; subclasses override the contact side."""

    def __init__(self, base: RegionAlgebra):
        self.base = base
        self.carrier_kind = base.carrier_kind

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.base.one()

    def join(self, a, b):
        return self.base.join(a, b)

    def meet(self, a, b):
        return self.base.meet(a, b)

    def complement(self, a):
        return self.base.complement(a)

    def leq(self, a, b):
        return self.base.leq(a, b)

    def contact(self, a, b):
        return self.base.contact(a, b)

    def bounded(self, a):
        return self.base.bounded(a)

    def enumerate(self):
        return self.base.enumerate()

    def sample_stream(self, seed, size_hint=3):
        return self.base.sample_stream(seed, size_hint)

    def truncations(self, b, depth):
        return self.base.truncations(b, depth)

    def render(self, a):
        return self.base.render(a)

    def sort_key(self, a):
        return self.base.sort_key(a)


def way_below(A: RegionAlgebra, a: Element, b: Element) -> bool:
    return not A.contact(a, A.complement(b))


def alexandroff_contact(A: RegionAlgebra, a: Element, b: Element) -> bool:
    return A.contact(a, b) or (not A.bounded(a) and not A.bounded(b))


class AlexandroffView(AlgebraView):
    """(B, C_ρ) with every element treated as bounded."""

    def __init__(self, base: RegionAlgebra):
        super().__init__(base)
        self.name = f"{base.name}[C_rho]"

    def contact(self, a, b):
        return alexandroff_contact(self.base, a, b)

    def bounded(self, a):
        return True

    def separate(self, a, c):
        base = self.base
        if base.bounded(a):
            return base.interpolate(a, c)
        c_star = base.complement(c)
        if not base.bounded(c_star):
            return None
        inner = base.interpolate(c_star, base.complement(a))
        return None if inner is None else base.complement(inner)

    def interpolate(self, a, c):
        return self.separate(a, c)

    def shrink(self, a):
        return self.base.shrink(a)

    def widen(self, a):
        wider = self.base.widen(a)
        if wider is not None and way_below(self, a, wider):
            return wider
        return None

    def truncations(self, b, depth):
        return ()


class CanonicalContact(AlgebraView):
    """A Boolean algebra with the smallest (ρ_s) or largest (ρ_l) contact and IB = B."""

    def __init__(self, base: RegionAlgebra, kind: Literal["smallest", "largest"]):
        super().__init__(base)
        self.kind = kind
        self.name = f"{base.name}[{'rho_s' if kind == 'smallest' else 'rho_l'}]"

    def contact(self, a, b):
        zero = self.base.zero()
        if self.kind == "smallest":
            return self.base.meet(a, b) != zero
        return a != zero and b != zero

    def bounded(self, a):
        return True

    def truncations(self, b, depth):
        return ()


def canonical_contact(BA: RegionAlgebra, kind: Literal["smallest", "largest"]) -> RegionAlgebra:
    return CanonicalContact(BA, kind)


class QuantifierStrategy(BaseModel):
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    sample_count: int = Field(default=1000, gt=0)
    seed: int = 7
    witness_depth: int = Field(default=20, gt=0)

    @classmethod
    def exhaustive(cls) -> "QuantifierStrategy":
        return cls(mode="exhaustive")

    @classmethod
    def sampled(cls, sample_count: int = 1000, seed: int = 7, witness_depth: int = 20) -> "QuantifierStrategy":
        return cls(mode="sampled", sample_count=sample_count, seed=seed, witness_depth=witness_depth)

    @classmethod
    def for_algebra(cls, A: RegionAlgebra, sample_count: int = 1000, seed: int = 7, witness_depth: int = 20):
        if A.enumerate() is not None:
            return cls.exhaustive()
        return cls.sampled(sample_count, seed, witness_depth)


Status = Literal["holds", "fails", "inconclusive"]


class Verdict(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    axiom: str
    status: Status
    witness: Optional[Tuple[Any, ...]] = Field(default=None, exclude=True)
    rendered: Optional[List[str]] = None
    checked: int = 0
    note: str = ""


def combine_status(statuses: Iterable[str]) -> str:
    statuses = list(statuses)
    if "fails" in statuses:
        return "fails"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "holds"


class AxiomReport(BaseModel):
    suite: str
    algebra: str = ""
    mode: str = "exhaustive"
    verdicts: List[Verdict] = []
    samples_used: int = 0
    seed: int = 0

    @property
    def status(self) -> str:
        return combine_status(v.status for v in self.verdicts)

    @property
    def passed(self) -> bool:
        return self.status == "holds"

    def verdict(self, axiom: str) -> Verdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def failed_axioms(self) -> List[str]:
        return [v.axiom for v in self.verdicts if v.status == "fails"]


# Axiom registry


@dataclass(frozen=True)
class Axiom:
    """A universal axiom uses ``holds``; an existential one uses ``premise``/``witness_ok``/``oracle``."""

    name: str
    arity: int
    holds: Optional[Callable[..., bool]] = None
    premise: Optional[Callable[..., bool]] = None
    witness_ok: Optional[Callable[..., bool]] = None
    oracle: Optional[Callable[..., Iterable[Element]]] = None
    steer: Optional[Callable[..., Optional[Tuple[Element, ...]]]] = None

    @property
    def existential(self) -> bool:
        return self.holds is None


def _wb(A, a, b):
    return way_below(A, a, b)


def _widened(A, a, extra):
    wider = A.widen(a)
    if wider is None:
        return None
    return A.join(wider, extra)


def _steer_waybelow_pair(A, draw):
    a = draw()
    c = _widened(A, a, draw())
    return None if c is None else (a, c)


def _steer_bounded_pair(A, draw):
    a = A.bounded_part(draw())
    c = _widened(A, a, draw())
    return None if c is None else (a, c)


def _steer_separated(A, draw):
    pair = _steer_waybelow_pair(A, draw)
    return None if pair is None else (pair[0], A.complement(pair[1]))


def _steer_chain(A, draw):
    b = draw()
    c = _widened(A, b, draw())
    if c is None:
        return None
    return (A.meet(b, draw()), b, c, A.join(c, draw()))


def _steer_common_upper(A, draw):
    a, b = draw(), draw()
    wa, wb = A.widen(a), A.widen(b)
    if wa is None or wb is None:
        return None
    return (a, b, A.join(A.join(wa, wb), draw()))


def _oracle_separate(A, a, c):
    found = A.separate(a, c)
    return [] if found is None else [found]


def _oracle_c5(A, a, b, depth):
    return _oracle_separate(A, a, A.complement(b))


def _oracle_c6(A, a, depth):
    found = A.shrink(A.complement(a))
    return [] if found is None else [found]


def _oracle_shrink(A, a, depth):
    found = A.shrink(a)
    return [] if found is None else [found]


def _oracle_bc1(A, a, c, depth):
    found = A.interpolate(a, c)
    return [] if found is None else [found]


def _oracle_bc2(A, a, b, depth):
    return list(A.truncations(b, depth))


def _oracle_ll5(A, a, c, depth):
    return _oracle_separate(A, a, c)


BOOLEAN_AXIOMS = [
    Axiom("B-commutative", 2, holds=lambda A, a, b: A.join(a, b) == A.join(b, a) and A.meet(a, b) == A.meet(b, a)),
    Axiom(
        "B-associative",
        3,
        holds=lambda A, a, b, c: A.join(A.join(a, b), c) == A.join(a, A.join(b, c))
        and A.meet(A.meet(a, b), c) == A.meet(a, A.meet(b, c)),
    ),
    Axiom("B-absorption", 2, holds=lambda A, a, b: A.join(a, A.meet(a, b)) == a and A.meet(a, A.join(a, b)) == a),
    Axiom(
        "B-distributive",
        3,
        holds=lambda A, a, b, c: A.meet(a, A.join(b, c)) == A.join(A.meet(a, b), A.meet(a, c)),
    ),
    Axiom(
        "B-complement",
        1,
        holds=lambda A, a: A.meet(a, A.complement(a)) == A.zero() and A.join(a, A.complement(a)) == A.one(),
    ),
    Axiom("B-bounds", 1, holds=lambda A, a: A.join(a, A.zero()) == a and A.meet(a, A.one()) == a),
    Axiom("B-order", 2, holds=lambda A, a, b: A.leq(a, b) == (A.join(a, b) == b) == (A.meet(a, b) == a)),
]

CONTACT_AXIOMS = [
    Axiom("C1", 1, holds=lambda A, a: a == A.zero() or A.contact(a, a)),
    Axiom("C2", 2, holds=lambda A, a, b: not A.contact(a, b) or (a != A.zero() and b != A.zero())),
    Axiom("C3", 2, holds=lambda A, a, b: A.contact(a, b) == A.contact(b, a)),
    Axiom("C4", 3, holds=lambda A, a, b, c: A.contact(a, A.join(b, c)) == (A.contact(a, b) or A.contact(a, c))),
]

NORMALITY_AXIOMS = [
    Axiom(
        "C5",
        2,
        premise=lambda A, a, b: not A.contact(a, b),
        witness_ok=lambda A, a, b, c: not A.contact(a, c) and not A.contact(b, A.complement(c)),
        oracle=_oracle_c5,
        steer=_steer_separated,
    ),
    Axiom(
        "C6",
        1,
        premise=lambda A, a: a != A.one(),
        witness_ok=lambda A, a, b: b != A.zero() and not A.contact(b, a),
        oracle=_oracle_c6,
    ),
]

CONNECTEDNESS_AXIOMS = [
    Axiom("CON", 1, holds=lambda A, a: a in (A.zero(), A.one()) or A.contact(a, A.complement(a))),
]

WAY_BELOW_AXIOMS = [
    Axiom("<<1", 2, holds=lambda A, a, b: not _wb(A, a, b) or A.leq(a, b), steer=_steer_waybelow_pair),
    Axiom("<<2", 1, holds=lambda A, a: _wb(A, A.zero(), A.zero())),
    Axiom(
        "<<3",
        4,
        holds=lambda A, a, b, c, t: not (A.leq(a, b) and _wb(A, b, c) and A.leq(c, t)) or _wb(A, a, t),
        steer=_steer_chain,
    ),
    Axiom(
        "<<4",
        3,
        holds=lambda A, a, b, c: not (_wb(A, a, c) and _wb(A, b, c)) or _wb(A, A.join(a, b), c),
        steer=_steer_common_upper,
    ),
    Axiom(
        "<<5",
        2,
        premise=lambda A, a, c: _wb(A, a, c),
        witness_ok=lambda A, a, c, b: _wb(A, a, b) and _wb(A, b, c),
        oracle=_oracle_ll5,
        steer=_steer_waybelow_pair,
    ),
    Axiom(
        "<<6",
        1,
        premise=lambda A, a: a != A.zero(),
        witness_ok=lambda A, a, b: b != A.zero() and _wb(A, b, a),
        oracle=_oracle_shrink,
    ),
    Axiom(
        "<<7",
        2,
        holds=lambda A, a, b: not _wb(A, a, b) or _wb(A, A.complement(b), A.complement(a)),
        steer=_steer_waybelow_pair,
    ),
]

LOCAL_AXIOMS = [
    Axiom(
        "IB",
        2,
        holds=lambda A, a, b: A.bounded(A.zero())
        and (not (A.bounded(a) and A.leq(b, a)) or A.bounded(b))
        and (not (A.bounded(a) and A.bounded(b)) or A.bounded(A.join(a, b))),
    ),
    Axiom(
        "BC1",
        2,
        premise=lambda A, a, c: A.bounded(a) and _wb(A, a, c),
        witness_ok=lambda A, a, c, b: A.bounded(b) and _wb(A, a, b) and _wb(A, b, c),
        oracle=_oracle_bc1,
        steer=_steer_bounded_pair,
    ),
    Axiom(
        "BC2",
        2,
        premise=lambda A, a, b: A.contact(a, b),
        witness_ok=lambda A, a, b, c: A.bounded(c) and A.contact(a, A.meet(c, b)),
        oracle=_oracle_bc2,
    ),
    Axiom(
        "BC3",
        1,
        premise=lambda A, a: a != A.zero(),
        witness_ok=lambda A, a, b: A.bounded(b) and b != A.zero() and _wb(A, b, a),
        oracle=_oracle_shrink,
    ),
]

SUITE_AXIOMS: Dict[str, List[Axiom]] = {
    "BOOL": BOOLEAN_AXIOMS,
    "CA": CONTACT_AXIOMS,
    "NCA": CONTACT_AXIOMS + NORMALITY_AXIOMS,
    "LL": WAY_BELOW_AXIOMS,
    "LCA": CONTACT_AXIOMS + LOCAL_AXIOMS,
    "CON": CONNECTEDNESS_AXIOMS,
}

_AXIOM_INDEX = {ax.name: i for i, ax in enumerate(
    BOOLEAN_AXIOMS + CONTACT_AXIOMS + NORMALITY_AXIOMS + CONNECTEDNESS_AXIOMS + WAY_BELOW_AXIOMS + LOCAL_AXIOMS
)}


def axiom_seed(seed: int, axiom_name: str, salt: int = 0) -> int:
    return (seed * 1_000_003 + _AXIOM_INDEX.get(axiom_name, 97) * 7919 + salt) % (2**63)


class _Draw:
    def __init__(self, stream: Iterator[Element]):
        self._stream = stream

    def __call__(self) -> Element:
        return next(self._stream)


def sampled_tuples(A: RegionAlgebra, arity: int, count: int, seed: int, steer=None) -> Iterator[Tuple[Element, ...]]:
    """Seeded tuples; when a steering rule exists every second tuple satisfies the antecedent."""
    draw = _Draw(A.sample_stream(seed))
    for i in range(count):
        if steer is not None and i % 2 == 1:
            steered = steer(A, draw)
            if steered is not None:
                yield steered
                continue
        yield tuple(draw() for _ in range(arity))


def _witness_key(A: RegionAlgebra, witness: Tuple[Element, ...]):
    return tuple(A.sort_key(x) for x in witness)


def _make_verdict(A, axiom: Axiom, failures, undecided, checked: int, note: str = "") -> Verdict:
    if failures:
        worst = min(failures, key=lambda w: _witness_key(A, w))
        return Verdict(
            axiom=axiom.name,
            status="fails",
            witness=worst,
            rendered=[A.render(x) for x in worst],
            checked=checked,
            note=note,
        )
    if undecided:
        first = min(undecided, key=lambda w: _witness_key(A, w))
        return Verdict(
            axiom=axiom.name,
            status="inconclusive",
            rendered=[A.render(x) for x in first],
            checked=checked,
            note=note or "no witness found within the search depth",
        )
    return Verdict(axiom=axiom.name, status="holds", checked=checked, note=note)


def _check_exhaustive(A: RegionAlgebra, axiom: Axiom, elements: List[Element]) -> Verdict:
    failures = []
    checked = 0
    for tup in itertools.product(elements, repeat=axiom.arity):
        checked += 1
        if axiom.existential:
            if not axiom.premise(A, *tup):
                continue
            if not any(axiom.witness_ok(A, *tup, w) for w in elements):
                failures.append(tup)
        elif not axiom.holds(A, *tup):
            failures.append(tup)
    return _make_verdict(A, axiom, failures, [], checked)


def _check_sampled(A: RegionAlgebra, axiom: Axiom, strategy: QuantifierStrategy) -> Verdict:
    failures, undecided = [], []
    checked = 0
    seed = axiom_seed(strategy.seed, axiom.name)
    search_pool: Optional[List[Element]] = None
    for tup in sampled_tuples(A, axiom.arity, strategy.sample_count, seed, axiom.steer):
        checked += 1
        if not axiom.existential:
            if not axiom.holds(A, *tup):
                failures.append(tup)
            continue
        if not axiom.premise(A, *tup):
            continue
        candidates = list(axiom.oracle(A, *tup, strategy.witness_depth)) if axiom.oracle else []
        if any(axiom.witness_ok(A, *tup, w) for w in candidates):
            continue
        if search_pool is None:
            stream = A.sample_stream(axiom_seed(strategy.seed, axiom.name, salt=1))
            search_pool = [next(stream) for _ in range(strategy.witness_depth)]
        if any(axiom.witness_ok(A, *tup, w) for w in search_pool):
            continue
        undecided.append(tup)
    return _make_verdict(A, axiom, failures, undecided, checked)


def check_axioms(A: RegionAlgebra, suite: str, strategy: Optional[QuantifierStrategy] = None) -> AxiomReport:
    if suite not in SUITE_AXIOMS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    strategy = strategy or QuantifierStrategy.for_algebra(A)
    elements = A.enumerate()
    if strategy.mode == "exhaustive" and elements is None:
        raise ExhaustiveUnavailable(f"{A.name} cannot be enumerated")

    verdicts = []
    for axiom in SUITE_AXIOMS[suite]:
        if strategy.mode == "exhaustive":
            verdicts.append(_check_exhaustive(A, axiom, elements))
        else:
            verdicts.append(_check_sampled(A, axiom, strategy))
        logger.debug("%s %s on %s: %s", suite, axiom.name, A.name, verdicts[-1].status)

    return AxiomReport(
        suite=suite,
        algebra=A.name,
        mode=strategy.mode,
        verdicts=verdicts,
        samples_used=0 if strategy.mode == "exhaustive" else strategy.sample_count,
        seed=strategy.seed,
    )


def recheck_witness(A: RegionAlgebra, suite: str, verdict: Verdict) -> bool:
    """True when the recorded witness still refutes the axiom under direct evaluation."""
    if verdict.status != "fails" or verdict.witness is None:
        return False
    axiom = next(ax for ax in SUITE_AXIOMS[suite] if ax.name == verdict.axiom)
    if not axiom.existential:
        return not axiom.holds(A, *verdict.witness)
    elements = A.enumerate()
    if elements is None:
        return False
    return axiom.premise(A, *verdict.witness) and not any(
        axiom.witness_ok(A, *verdict.witness, w) for w in elements
    )


def passes(A: RegionAlgebra, suite: str, strategy: Optional[QuantifierStrategy] = None) -> bool:
    return check_axioms(A, suite, strategy).passed
