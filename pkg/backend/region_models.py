"""Exact region models: finite/cofinite subsets of ℕ and rational interval unions in RC(ℝ).

Interval arithmetic goes through ``portion`` with ``Fraction`` endpoints; the
canonical stored form is a tuple of closed intervals where ``None`` stands for
an infinite end.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import portion as P

from errors import MalformedInterval, ModelMismatch, PreconditionViolated
from lca_core import RegionAlgebra, way_below

logger = logging.getLogger(__name__)

Endpoint = Optional[Fraction]

# denominator of sampled test points; keeps them off every breakpoint the stock data can produce
POINT_DENOMINATOR = 997


@dataclass(frozen=True)
class IntervalRegion:
    intervals: Tuple[Tuple[Endpoint, Endpoint], ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_bounded(self) -> bool:
        return all(l is not None and r is not None for l, r in self.intervals)

    def __contains__(self, x) -> bool:
        return any((l is None or l <= x) and (r is None or x <= r) for l, r in self.intervals)

    def __str__(self) -> str:
        return render_interval_region(self)


@dataclass(frozen=True)
class NatRegion:
    tag: Literal["finite", "cofinite"] = "finite"
    support: Tuple[int, ...] = ()

    @classmethod
    def finite(cls, members: Iterable[int]) -> "NatRegion":
        return cls("finite", tuple(sorted(set(members))))

    @classmethod
    def cofinite(cls, missing: Iterable[int]) -> "NatRegion":
        return cls("cofinite", tuple(sorted(set(missing))))

    @property
    def is_empty(self) -> bool:
        return self.tag == "finite" and not self.support

    def __contains__(self, n) -> bool:
        return (n in self.support) == (self.tag == "finite")

    def __str__(self) -> str:
        return render_nat_region(self)


Region = Union[IntervalRegion, NatRegion]


# portion conversions


def _lo(value: Endpoint):
    return -P.inf if value is None else value


def _hi(value: Endpoint):
    return P.inf if value is None else value


def to_portion(region: IntervalRegion) -> P.Interval:
    return P.Interval(*[P.closed(_lo(l), _hi(r)) for l, r in region.intervals])


def closure(iv: P.Interval) -> P.Interval:
    return P.Interval(*[atom.replace(left=P.CLOSED, right=P.CLOSED) for atom in iv if not atom.empty])


def interior(iv: P.Interval) -> P.Interval:
    return P.Interval(*[atom.replace(left=P.OPEN, right=P.OPEN) for atom in iv if not atom.empty])


def _endpoint(value) -> Endpoint:
    if value == P.inf or value == -P.inf:
        return None
    return Fraction(value)


def from_closed(iv: P.Interval) -> IntervalRegion:
    """Canonical region of a closed portion set; isolated points are dropped."""
    parts = []
    for atom in closure(iv):
        if atom.empty or atom.lower == atom.upper:
            continue
        parts.append((_endpoint(atom.lower), _endpoint(atom.upper)))
    return IntervalRegion(tuple(parts))


def _contained(inner: P.Interval, outer: P.Interval) -> bool:
    if inner.empty:
        return True
    if outer.empty:
        return False
    return inner in outer


def normalize(raw: Union[Region, Sequence[Tuple[Endpoint, Endpoint]]]) -> Region:
    """Canonical form of a raw interval list, a raw region, or a nat region."""
    if isinstance(raw, NatRegion):
        return NatRegion(raw.tag, tuple(sorted(set(raw.support))))
    pairs = raw.intervals if isinstance(raw, IntervalRegion) else raw
    pieces = []
    for l, r in pairs:
        l = None if l is None else Fraction(l)
        r = None if r is None else Fraction(r)
        if l is not None and r is not None and l > r:
            raise MalformedInterval(f"left endpoint {l} exceeds right endpoint {r}")
        pieces.append(P.closed(_lo(l), _hi(r)))
    return from_closed(P.Interval(*pieces))


def interval(l, r) -> IntervalRegion:
    return normalize([(l, r)])


REALS = IntervalRegion(((None, None),))
EMPTY = IntervalRegion(())


# literals


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_interval_region(region: IntervalRegion) -> str:
    if region.is_empty:
        return "empty"
    parts = []
    for l, r in region.intervals:
        left = "(-inf" if l is None else f"[{_fmt(l)}"
        right = "inf)" if r is None else f"{_fmt(r)}]"
        parts.append(f"{left},{right}")
    return " + ".join(parts)


def render_nat_region(region: NatRegion) -> str:
    return "{" + region.tag + ": [" + ", ".join(str(n) for n in region.support) + "]}"


_INTERVAL_LITERAL = re.compile(r"^\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*$")
_NAT_LITERAL = re.compile(r"^\s*\{\s*(finite|cofinite)\s*:\s*\[([^\]]*)\]\s*\}\s*$")


def _parse_bound(text: str, infinite_token: str) -> Endpoint:
    if text in (infinite_token, infinite_token.replace("inf", "oo")):
        return None
    return Fraction(text)


def parse_interval_region(text: str) -> IntervalRegion:
    text = text.strip()
    if text in ("empty", "0", "{}"):
        return EMPTY
    pairs = []
    for chunk in text.split("+"):
        match = _INTERVAL_LITERAL.match(chunk)
        if not match:
            raise ValueError(f"bad interval literal {chunk.strip()!r}")
        open_left, left, right, close_right = match.groups()
        l = _parse_bound(left, "-inf")
        r = _parse_bound(right, "inf")
        if (open_left == "(") != (l is None) or (close_right == ")") != (r is None):
            raise ValueError(f"only infinite ends may be open in {chunk.strip()!r}")
        pairs.append((l, r))
    return normalize(pairs)


def parse_nat_region(text: str) -> NatRegion:
    match = _NAT_LITERAL.match(text)
    if not match:
        raise ValueError(f"bad nat region literal {text!r}")
    tag, body = match.groups()
    members = [int(tok) for tok in body.replace(" ", "").split(",") if tok]
    if any(n < 0 for n in members):
        raise ValueError("natural numbers are non-negative")
    return NatRegion(tag, tuple(sorted(set(members))))


# symbolic clusters of the stock models


@dataclass(frozen=True)
class Point:
    x: Union[Fraction, int]

    def __str__(self) -> str:
        return f"Point({_fmt(Fraction(self.x))})"


@dataclass(frozen=True)
class Infinity:
    def __str__(self) -> str:
        return "Infinity"


INFINITY = Infinity()


class _StockModel(RegionAlgebra):
    def parse(self, text: str) -> Region:
        raise NotImplementedError

    def shrink_family(self, region: Region, depth: int) -> Iterator[Region]:
        raise NotImplementedError

    def widen_family(self, region: Region, depth: int) -> Iterator[Region]:
        raise NotImplementedError

    def interior_points(self, region: Region, rng: np.random.Generator, count: int) -> List:
        raise NotImplementedError

    def sample_points(self, rng: np.random.Generator, count: int) -> List:
        raise NotImplementedError

    def edge_cases(self) -> List[Region]:
        return []

    def _random_region(self, rng: np.random.Generator, size_hint: int) -> Region:
        raise NotImplementedError

    def sample_stream(self, seed: int, size_hint: int = 3) -> Iterator[Region]:
        """Edge cases first, then seeded draws with 0 at every index ≡ 0 and 1 at ≡ 4 (mod 8)."""
        yield from self.edge_cases()
        rng = np.random.default_rng(seed)
        k = 0
        while True:
            if k % 8 == 0:
                yield self.zero()
            elif k % 8 == 4:
                yield self.one()
            else:
                yield self._random_region(rng, size_hint)
            k += 1


class NatModel(_StockModel):
    """Finite and cofinite subsets of the discrete space ℕ; IB = finite sets."""

    carrier_kind = "cofinite-nat"

    def __init__(self, name: str = "cofinite-nat"):
        self.name = name

    def _check(self, *regions):
        for r in regions:
            if not isinstance(r, NatRegion):
                raise ModelMismatch(f"{self.name} expects nat regions, got {type(r).__name__}")

    def zero(self):
        return NatRegion("finite", ())

    def one(self):
        return NatRegion("cofinite", ())

    def join(self, a, b):
        self._check(a, b)
        A, B = set(a.support), set(b.support)
        if a.tag == "finite" and b.tag == "finite":
            return NatRegion.finite(A | B)
        if a.tag == "cofinite" and b.tag == "cofinite":
            return NatRegion.cofinite(A & B)
        finite, cofinite = (A, B) if a.tag == "finite" else (B, A)
        return NatRegion.cofinite(cofinite - finite)

    def meet(self, a, b):
        self._check(a, b)
        A, B = set(a.support), set(b.support)
        if a.tag == "finite" and b.tag == "finite":
            return NatRegion.finite(A & B)
        if a.tag == "cofinite" and b.tag == "cofinite":
            return NatRegion.cofinite(A | B)
        finite, cofinite = (A, B) if a.tag == "finite" else (B, A)
        return NatRegion.finite(finite - cofinite)

    def complement(self, a):
        self._check(a)
        return NatRegion("cofinite" if a.tag == "finite" else "finite", a.support)

    def leq(self, a, b):
        return self.meet(a, self.complement(b)).is_empty

    def contact(self, a, b):
        return not self.meet(a, b).is_empty

    def bounded(self, a):
        self._check(a)
        return a.tag == "finite"

    def interpolate(self, a, c):
        return a if self.leq(a, c) else None

    def separate(self, a, c):
        return self.interpolate(a, c)

    def shrink(self, a):
        if a.is_empty:
            return None
        if a.tag == "finite":
            return NatRegion.finite([a.support[0]])
        n = 0
        while n in a.support:
            n += 1
        return NatRegion.finite([n])

    def widen(self, a):
        return a

    def _horizon(self, region: NatRegion) -> int:
        return (max(region.support) + 1) if region.support else 1

    def truncations(self, b, depth):
        for n in range(1, depth + 1):
            yield self.meet(b, NatRegion.finite(range(n)))

    def shrink_family(self, region, depth):
        base = self._horizon(region)
        for k in range(min(depth, 12)):
            yield self.meet(region, NatRegion.finite(range(base + 2**k)))

    def widen_family(self, region, depth):
        yield region

    def interior_points(self, region, rng, count):
        horizon = self._horizon(region) + 8
        members = [n for n in range(horizon) if n in region]
        if not members:
            return []
        picks = rng.integers(0, len(members), size=count)
        return sorted({members[int(i)] for i in picks})

    def sample_points(self, rng, count):
        return list(range(count))

    def edge_cases(self):
        return [
            self.zero(),
            self.one(),
            NatRegion.finite([0]),
            NatRegion.cofinite([0]),
            NatRegion.finite([0, 1]),
            NatRegion.finite([1]),
            NatRegion.cofinite([1, 2]),
        ]

    def _random_region(self, rng, size_hint):
        tag = "finite" if rng.integers(0, 2) == 0 else "cofinite"
        size = int(rng.integers(0, size_hint + 2))
        return NatRegion(tag, tuple(sorted({int(n) for n in rng.integers(0, 10, size=size)})))

    def parse(self, text):
        return parse_nat_region(text)

    def render(self, a):
        return render_nat_region(a)

    def sort_key(self, a):
        return (0 if a.tag == "finite" else 1, len(a.support), a.support)


def _endpoint_key(value: Endpoint, side: int):
    return (side, Fraction(0)) if value is None else (0, value)


class IntervalModel(_StockModel):
    """Finite unions of closed rational intervals and rays inside RC(ℝ); IB = bounded regions."""

    carrier_kind = "rational-interval"

    def __init__(self, name: str = "rational-interval"):
        self.name = name

    def _check(self, *regions):
        for r in regions:
            if not isinstance(r, IntervalRegion):
                raise ModelMismatch(f"{self.name} expects interval regions, got {type(r).__name__}")

    def zero(self):
        return EMPTY

    def one(self):
        return REALS

    def join(self, a, b):
        self._check(a, b)
        return from_closed(to_portion(a) | to_portion(b))

    def meet(self, a, b):
        self._check(a, b)
        return from_closed(interior(to_portion(a)) & interior(to_portion(b)))

    def complement(self, a):
        self._check(a)
        return from_closed(~to_portion(a))

    def leq(self, a, b):
        self._check(a, b)
        return _contained(to_portion(a), to_portion(b))

    def contact(self, a, b):
        self._check(a, b)
        return not (to_portion(a) & to_portion(b)).empty

    def bounded(self, a):
        self._check(a)
        return a.is_bounded

    def way_below(self, a, b) -> bool:
        return _contained(to_portion(a), interior(to_portion(b)))

    def _component_of(self, l: Endpoint, r: Endpoint, outer: P.Interval):
        probe = P.closed(_lo(l), _hi(r))
        for atom in outer:
            if not atom.empty and probe in atom:
                return atom
        return None

    def interpolate(self, a, c):
        """Half-margin expansion of each interval of ``a`` inside int(c)."""
        self._check(a, c)
        if not self.way_below(a, c):
            return None
        inner = interior(to_portion(c))
        pieces = []
        for l, r in a.intervals:
            atom = self._component_of(l, r, inner)
            if l is not None:
                l = l - 1 if atom.lower == -P.inf else l - (l - Fraction(atom.lower)) / 2
            if r is not None:
                r = r + 1 if atom.upper == P.inf else r + (Fraction(atom.upper) - r) / 2
            pieces.append((l, r))
        return normalize(pieces)

    def separate(self, a, c):
        return self.interpolate(a, c)

    def shrink(self, a):
        self._check(a)
        if a.is_empty:
            return None
        l, r = a.intervals[0]
        if l is None and r is None:
            return interval(0, 1)
        if l is None:
            return interval(r - 2, r - 1)
        if r is None:
            return interval(l + 1, l + 2)
        quarter = (r - l) / 4
        return interval(l + quarter, r - quarter)

    def expand(self, region: IntervalRegion, eps: Fraction) -> IntervalRegion:
        return normalize([(None if l is None else l - eps, None if r is None else r + eps) for l, r in region.intervals])

    def contract(self, region: IntervalRegion, eps: Fraction) -> IntervalRegion:
        pieces = []
        for l, r in region.intervals:
            l2 = None if l is None else l + eps
            r2 = None if r is None else r - eps
            if l2 is None or r2 is None or l2 < r2:
                pieces.append((l2, r2))
        return normalize(pieces)

    def widen(self, a):
        return self.expand(a, Fraction(1))

    def truncations(self, b, depth):
        for n in range(1, depth + 1):
            yield self.meet(b, interval(-n, n))

    def shrink_family(self, region, depth):
        for k in range(1, depth + 1):
            yield self.meet(self.contract(region, Fraction(1, 2**k)), interval(-(2**k), 2**k))

    def widen_family(self, region, depth):
        for k in range(1, depth + 1):
            yield self.expand(region, Fraction(1, 2**k))

    def _random_point(self, rng, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
        lo_n = math.floor(lo * POINT_DENOMINATOR) + 1
        hi_n = math.ceil(hi * POINT_DENOMINATOR) - 1
        if lo_n > hi_n:
            return None
        n = int(rng.integers(lo_n, hi_n + 1))
        if n % POINT_DENOMINATOR == 0:
            n = n + 1 if n < hi_n else n - 1
        x = Fraction(n, POINT_DENOMINATOR)
        return x if lo < x < hi else None

    def interior_points(self, region, rng, count):
        points = set()
        if region.is_empty:
            return []
        for _ in range(count):
            l, r = region.intervals[int(rng.integers(0, len(region.intervals)))]
            lo = l if l is not None else (r - 10 if r is not None else Fraction(-10))
            hi = r if r is not None else lo + 10
            x = self._random_point(rng, lo, hi)
            if x is not None:
                points.add(x)
        return sorted(points)

    def sample_points(self, rng, count):
        points = set()
        while len(points) < count:
            n = int(rng.integers(-10 * POINT_DENOMINATOR, 10 * POINT_DENOMINATOR))
            if n % POINT_DENOMINATOR:
                points.add(Fraction(n, POINT_DENOMINATOR))
        return sorted(points)

    def edge_cases(self):
        return [
            EMPTY,
            REALS,
            interval(0, 1),
            interval(1, 2),
            interval(0, None),
            interval(None, 0),
            interval(-1, 2),
            normalize([(0, 1), (2, 3)]),
        ]

    def _random_region(self, rng, size_hint):
        components = int(rng.integers(1, size_hint + 1))
        ends = set()
        while len(ends) < 2 * components:
            den = int(rng.choice([1, 2, 4]))
            ends.add(Fraction(int(rng.integers(-10 * den, 10 * den + 1)), den))
        ends = sorted(ends)
        pairs: List[Tuple[Endpoint, Endpoint]] = [(ends[i], ends[i + 1]) for i in range(0, len(ends), 2)]
        if rng.integers(0, 4) == 0:
            pairs[0] = (None, pairs[0][1])
        if rng.integers(0, 4) == 0:
            pairs[-1] = (pairs[-1][0], None)
        return normalize(pairs)

    def parse(self, text):
        return parse_interval_region(text)

    def render(self, a):
        return render_interval_region(a)

    def sort_key(self, a):
        return (len(a.intervals), tuple((_endpoint_key(l, -1), _endpoint_key(r, 1)) for l, r in a.intervals))


def boolean_ops(model: RegionAlgebra, a: Region, b: Region) -> dict:
    return {
        "join": model.join(a, b),
        "meet": model.meet(a, b),
        "complement": model.complement(a),
        "leq": model.leq(a, b),
    }


def contact_bounded_waybelow(model: RegionAlgebra, a: Region, b: Region) -> dict:
    return {"contact": model.contact(a, b), "bounded": model.bounded(a), "way_below": way_below(model, a, b)}


def sample_region(model: _StockModel, seed: int, size_hint: int = 3, index: int = 0) -> Region:
    """The ``index``-th draw of the model's stream for ``seed``."""
    for i, region in enumerate(model.sample_stream(seed, size_hint)):
        if i == index:
            return region
    raise AssertionError("sample streams are infinite")


def interpolate_witness(model: RegionAlgebra, a: Region, c: Region) -> Region:
    if not model.bounded(a) or not way_below(model, a, c):
        raise PreconditionViolated(f"need a bounded and a << c, got {model.render(a)} and {model.render(c)}")
    b = model.interpolate(a, c)
    if b is None:
        raise PreconditionViolated(f"{model.name} has no interpolation oracle")
    return b


def cluster_membership(model: RegionAlgebra, sigma: Union[Point, Infinity], region: Region) -> bool:
    if isinstance(sigma, Infinity):
        return not model.bounded(region)
    return sigma.x in region


def principal_member(model: RegionAlgebra, a: Region, b: Region) -> bool:
    """b ∈ I_a, the principal δ-ideal {b ∈ IB : b ≪ a}."""
    return model.bounded(b) and way_below(model, b, a)


def model_for(region: Region) -> _StockModel:
    return NAT_MODEL if isinstance(region, NatRegion) else INTERVAL_MODEL


NAT_MODEL = NatModel()
INTERVAL_MODEL = IntervalModel()
