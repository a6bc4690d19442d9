"""Described continuous maps on the stock models and the induced φ_f(G) = cl(f⁻¹(int G))."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Literal, Optional, Sequence, Tuple, Union

import portion as P

from errors import CarrierEscape, ModelMismatch
from region_models import (
    IntervalRegion,
    NatRegion,
    closure,
    from_closed,
    interior,
    to_portion,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NatMap:
    """f(n) = exceptions[n] for n < N, else the tail rule: shift n ↦ n+k, or constant c."""

    exceptions: Tuple[int, ...] = ()
    tail: Literal["shift", "constant"] = "shift"
    tail_value: int = 0
    name: str = "nat_map"

    def __post_init__(self):
        if any(v < 0 for v in self.exceptions) or self.tail_value < 0:
            raise ValueError("nat_map values must be natural numbers")

    def evaluate(self, n: int) -> int:
        if n < len(self.exceptions):
            return self.exceptions[n]
        return n + self.tail_value if self.tail == "shift" else self.tail_value

    def preimage_finite(self, targets: Iterable[int]) -> NatRegion:
        """f⁻¹ of a finite set, which may be cofinite under a constant tail."""
        targets = set(targets)
        start = len(self.exceptions)
        head = {i for i, v in enumerate(self.exceptions) if v in targets}
        if self.tail == "constant":
            if self.tail_value in targets:
                return NatRegion.cofinite(set(range(start)) - head)
            return NatRegion.finite(head)
        tail = {t - self.tail_value for t in targets if t - self.tail_value >= start}
        return NatRegion.finite(head | tail)

    def preimage(self, region: NatRegion) -> NatRegion:
        if region.tag == "finite":
            return self.preimage_finite(region.support)
        missing = self.preimage_finite(region.support)
        return NatRegion("cofinite" if missing.tag == "finite" else "finite", missing.support)


@dataclass(frozen=True)
class PLMap:
    """Continuous piecewise-linear map through ``points`` with explicit end slopes."""

    points: Tuple[Tuple[Fraction, Fraction], ...]
    left_slope: Fraction = Fraction(0)
    right_slope: Fraction = Fraction(0)
    name: str = "pl_map"

    def __post_init__(self):
        if not self.points:
            raise ValueError("a pl_map needs at least one breakpoint")
        xs = [x for x, _ in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("pl_map breakpoints must be strictly increasing")

    def pieces(self) -> List[Tuple[Optional[Fraction], Optional[Fraction], Fraction, Fraction, Fraction]]:
        """(lo, hi, anchor_x, anchor_y, slope) with None for infinite ends."""
        pts = self.points
        out = [(None, pts[0][0], pts[0][0], pts[0][1], self.left_slope)]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            out.append((x0, x1, x0, y0, (y1 - y0) / (x1 - x0)))
        out.append((pts[-1][0], None, pts[-1][0], pts[-1][1], self.right_slope))
        return out

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        for lo, hi, ax, ay, slope in self.pieces():
            if (lo is None or lo <= x) and (hi is None or x <= hi):
                return ay + slope * (x - ax)
        raise AssertionError("pieces cover the line")

    def slope_at_end(self, side: Literal["left", "right"]) -> Fraction:
        return self.left_slope if side == "left" else self.right_slope

    def preimage_open(self, open_set: P.Interval) -> P.Interval:
        """f⁻¹ of a union of open intervals, computed piece by piece."""
        parts = []
        for lo, hi, ax, ay, slope in self.pieces():
            domain = P.closed(-P.inf if lo is None else lo, P.inf if hi is None else hi)
            for atom in open_set:
                if atom.empty:
                    continue
                if slope == 0:
                    if atom.lower < ay < atom.upper:
                        parts.append(domain)
                    continue
                a = _solve(atom.lower, ax, ay, slope)
                b = _solve(atom.upper, ax, ay, slope)
                lower, upper = (a, b) if slope > 0 else (b, a)
                parts.append(P.open(lower, upper) & domain)
        return P.Interval(*parts)


def _solve(y, ax: Fraction, ay: Fraction, slope: Fraction):
    """The x with f(x) = y on the line through (ax, ay); infinities map by slope sign."""
    if y == P.inf or y == -P.inf:
        return y if slope > 0 else -y
    return ax + (Fraction(y) - ay) / slope


DescribedMap = Union[NatMap, PLMap]


def is_proper(f: DescribedMap) -> bool:
    if isinstance(f, NatMap):
        return f.tail == "shift"
    return f.left_slope != 0 and f.right_slope != 0


def evaluate(f: DescribedMap, x):
    return f.evaluate(x)


def phi_from_map(f: DescribedMap, G: Union[IntervalRegion, NatRegion]):
    if isinstance(f, NatMap):
        if not isinstance(G, NatRegion):
            raise ModelMismatch("a nat_map acts on nat regions")
        # discrete space: interiors and closures are trivial
        return f.preimage(G)
    if not isinstance(G, IntervalRegion):
        raise ModelMismatch("a pl_map acts on interval regions")
    raw = f.preimage_open(interior(to_portion(G)))
    result = from_closed(raw)
    if to_portion(result) != closure(raw):
        raise CarrierEscape(f"cl(f^-1(int G)) for {f.name} is not a finite union of nondegenerate intervals")
    return result


def compose_maps(g: DescribedMap, f: DescribedMap) -> DescribedMap:
    """g ∘ f (apply f first)."""
    if isinstance(f, NatMap) and isinstance(g, NatMap):
        return _compose_nat(g, f)
    if isinstance(f, PLMap) and isinstance(g, PLMap):
        return _compose_pl(g, f)
    raise ModelMismatch("cannot compose maps of different models")


def _compose_nat(g: NatMap, f: NatMap) -> NatMap:
    start = len(f.exceptions)
    if f.tail == "constant":
        tail, value = "constant", g.evaluate(f.tail_value)
    else:
        start = max(start, len(g.exceptions) - f.tail_value)
        tail, value = g.tail, (f.tail_value + g.tail_value if g.tail == "shift" else g.tail_value)
    return NatMap(tuple(g.evaluate(f.evaluate(n)) for n in range(start)), tail, value, name=f"{g.name}.{f.name}")


def _compose_pl(g: PLMap, f: PLMap) -> PLMap:
    xs = {x for x, _ in f.points}
    for lo, hi, ax, ay, slope in f.pieces():
        if slope == 0:
            continue
        for y, _ in g.points:
            x = ax + (y - ay) / slope
            if (lo is None or lo <= x) and (hi is None or x <= hi):
                xs.add(x)
    ordered = sorted(xs)

    def end_slope(f_slope: Fraction, side: str) -> Fraction:
        if f_slope == 0:
            return Fraction(0)
        heads_down = (f_slope > 0) == (side == "left")
        return f_slope * g.slope_at_end("left" if heads_down else "right")

    return PLMap(
        tuple((x, g.evaluate(f.evaluate(x))) for x in ordered),
        end_slope(f.left_slope, "left"),
        end_slope(f.right_slope, "right"),
        name=f"{g.name}.{f.name}",
    )


def pl_map(points: Sequence[Tuple[object, object]], left_slope=0, right_slope=0, name: str = "pl_map") -> PLMap:
    return PLMap(
        tuple((Fraction(x), Fraction(y)) for x, y in points),
        Fraction(left_slope),
        Fraction(right_slope),
        name=name,
    )


def nat_map(exceptions: Sequence[int] = (), shift: Optional[int] = None, constant: Optional[int] = None, name: str = "nat_map") -> NatMap:
    if (shift is None) == (constant is None):
        raise ValueError("a nat_map tail is exactly one of shift(k) or constant(c)")
    if shift is not None:
        return NatMap(tuple(exceptions), "shift", shift, name=name)
    return NatMap(tuple(exceptions), "constant", constant, name=name)


IDENTITY = pl_map([(0, 0)], 1, 1, name="identity")
DOUBLE = pl_map([(0, 0)], 2, 2, name="double")
ABSOLUTE = pl_map([(0, 0)], -1, 1, name="absolute")
HAT = pl_map([(-1, 0), (0, 1), (1, 0)], 0, 0, name="hat")


def constant_pl(c=0) -> PLMap:
    return pl_map([(0, c)], 0, 0, name=f"constant{c}")


NAT_IDENTITY = nat_map(shift=0, name="nat_identity")


def stock_pl_maps() -> List[PLMap]:
    return [IDENTITY, DOUBLE, ABSOLUTE, HAT, constant_pl(0)]
