"""Exact piecewise-linear maps of the real line.

Every value is an arbitrary-precision rational (``gmpy2.mpq``).  Maps are kept in a canonical
form (anchors only where the slope actually changes, padded to two anchors),
so ``f == g`` on two maps is equality of the functions they represent.

Three kinds of object live here:

* :class:`PLFunction` -- any continuous piecewise-linear function with affine
  tails (used for domain boundaries, may be constant).
* :class:`MonotoneMap` -- a strictly monotone PL bijection of the line.
* :class:`QuasiPeriodicMap` -- a strictly monotone map with
  ``f(x + 1) == f(x) + c``, stored by its restriction to ``[0, 1]``.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from gmpy2 import mpq

__all__ = [
    "Direction",
    "EndpointMismatch",
    "MonotoneMap",
    "NotMonotone",
    "NotQuasiPeriodic",
    "PLFunction",
    "QuasiPeriodicMap",
    "ZeroPeriod",
    "affine",
    "as_quasi_periodic",
    "compose",
    "identity",
    "inverse_eval",
    "invert",
    "is_affine",
    "map_from_json",
    "map_to_json",
    "pl_compose",
    "pl_eval",
    "pl_invert",
    "Rational",
    "q",
    "qp_compose",
    "qp_from_fundamental",
    "qp_invert",
    "qp_quasi_period",
    "qstr",
]


class NotMonotone(ValueError):
    pass


class EndpointMismatch(ValueError):
    pass


class ZeroPeriod(ValueError):
    pass


class NotQuasiPeriodic(ValueError):
    pass


class Direction(enum.IntEnum):
    DEC = -1
    INC = 1

    @property
    def label(self) -> str:
        return "inc" if self is Direction.INC else "dec"


Rational = mpq


def q(value) -> Rational:
    """Coerce ``value`` to an exact rational.

    Accepts ints, rationals and strings such as ``"3"`` or ``"-7/2"``.  Floats
    are refused: silently converting ``0.1`` would defeat the point.
    """
    if isinstance(value, mpq):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch not in "+-/0123456789" for ch in text):
            raise ValueError(f"not a rational literal: {value!r}")
        return mpq(text)
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def qstr(value: Rational) -> str:
    return str(value)


Anchor = tuple[Rational, Rational]


def _slopes(anchors: Sequence[Anchor], left: Rational, right: Rational) -> list[Rational]:
    """Slopes of the len(anchors)+1 pieces, tails included."""
    inner = [
        (y1 - y0) / (x1 - x0)
        for (x0, y0), (x1, y1) in zip(anchors, anchors[1:])
    ]
    return [left, *inner, right]


def _interp(anchors: Sequence[Anchor], xs: Sequence[Rational],
            left: Rational, right: Rational, x: Rational) -> Rational:
    if x <= xs[0]:
        return anchors[0][1] + left * (x - xs[0])
    if x >= xs[-1]:
        return anchors[-1][1] + right * (x - xs[-1])
    i = bisect.bisect_right(xs, x)
    (x0, y0), (x1, y1) = anchors[i - 1], anchors[i]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function on the whole line.

    Between anchors the function interpolates linearly; beyond the first and
    last anchor it continues with ``left_slope`` and ``right_slope``.
    """

    anchors: tuple[Anchor, ...]
    left_slope: Rational
    right_slope: Rational

    def __post_init__(self):
        pts = sorted((q(x), q(y)) for x, y in self.anchors)
        if not pts:
            raise ValueError("a piecewise-linear map needs at least one anchor")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x0 == x1:
                raise ValueError(f"duplicate anchor abscissa {x0}")
        left, right = q(self.left_slope), q(self.right_slope)
        self._check(pts, left, right)
        anchors = _canonical(pts, left, right)
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "left_slope", left)
        object.__setattr__(self, "right_slope", right)

    def _check(self, pts, left, right):
        pass

    @cached_property
    def _xs(self) -> list[Rational]:
        return [x for x, _ in self.anchors]

    def __call__(self, x) -> Rational:
        return _interp(self.anchors, self._xs, self.left_slope, self.right_slope, q(x))

    @property
    def slopes(self) -> list[Rational]:
        return _slopes(self.anchors, self.left_slope, self.right_slope)

    @property
    def breakpoints(self) -> list[Rational]:
        s = self.slopes
        return [x for i, (x, _) in enumerate(self.anchors) if s[i] != s[i + 1]]

    def segments(self) -> list[tuple[Optional[Rational], Optional[Rational], Rational]]:
        """``(lo, hi, slope)`` pieces; ``None`` marks an infinite end."""
        xs = self._xs
        bounds = [None, *xs, None]
        return list(zip(bounds, bounds[1:], self.slopes))

    def preimages(self, y: Rational) -> list[Rational]:
        """All ``x`` with ``self(x) == y`` on non-constant pieces."""
        out = set()
        for lo, hi, s in self.segments():
            if s == 0:
                continue
            ref = lo if lo is not None else hi
            x = ref + (y - self(ref)) / s
            if (lo is None or x >= lo) and (hi is None or x <= hi):
                out.add(x)
        return sorted(out)

    def breakpoints_in(self, lo: Rational, hi: Rational) -> list[Rational]:
        return [b for b in self.breakpoints if lo <= b <= hi]

    @property
    def is_affine(self) -> bool:
        return not self.breakpoints


def _canonical(pts: list[Anchor], left: Rational, right: Rational) -> tuple[Anchor, ...]:
    s = _slopes(pts, left, right)
    kept = [p for i, p in enumerate(pts) if s[i] != s[i + 1]]
    if len(kept) >= 2:
        return tuple(kept)
    xs = [x for x, _ in pts]

    def at(x):
        return _interp(pts, xs, left, right, x)

    if not kept:
        return ((Rational(0), at(Rational(0))), (Rational(1), at(Rational(1))))
    b = kept[0][0]
    return ((b, at(b)), (b + 1, at(b + 1)))


@dataclass(frozen=True)
class MonotoneMap(PLFunction):
    """Strictly monotone piecewise-linear bijection of the line."""

    def _check(self, pts, left, right):
        slopes = _slopes(pts, left, right)
        if any(s == 0 for s in slopes):
            raise NotMonotone("monotone maps need nonzero slopes everywhere")
        if len({s > 0 for s in slopes}) != 1:
            raise NotMonotone("slopes change sign: map is not monotone")

    @property
    def direction(self) -> Direction:
        return Direction.INC if self.left_slope > 0 else Direction.DEC

    def inverse_eval(self, y) -> Rational:
        y = q(y)
        (x0, y0), (x1, y1) = self.anchors[0], self.anchors[-1]
        if self.direction is Direction.INC:
            if y <= y0:
                return x0 + (y - y0) / self.left_slope
            if y >= y1:
                return x1 + (y - y1) / self.right_slope
        else:
            if y >= y0:
                return x0 + (y - y0) / self.left_slope
            if y <= y1:
                return x1 + (y - y1) / self.right_slope
        (hit,) = self.preimages(y)
        return hit


def affine(slope, offset=0) -> MonotoneMap:
    """The map ``x -> slope * x + offset``."""
    slope, offset = q(slope), q(offset)
    if slope == 0:
        raise NotMonotone("affine map with zero slope")
    return MonotoneMap(((Rational(0), offset), (Rational(1), slope + offset)), slope, slope)


def identity() -> MonotoneMap:
    return affine(1)


def pl_eval(f, x) -> Rational:
    return f(q(x))


def _compose_pl(g: PLFunction, f: PLFunction) -> tuple[list[Anchor], Rational, Rational]:
    xs = set(f.breakpoints)
    for b in g.breakpoints:
        xs.update(f.preimages(b))
    if not xs:
        xs = {Rational(0)}
    pts = [(x, g(f(x))) for x in sorted(xs)]
    first, last = f.left_slope, f.right_slope
    # f -> -inf as x -> -inf when first > 0, so g's left tail applies
    left = first * (g.left_slope if first > 0 else g.right_slope) if first else Rational(0)
    right = last * (g.right_slope if last > 0 else g.left_slope) if last else Rational(0)
    return pts, left, right


def pl_compose(g: PLFunction, f: PLFunction) -> PLFunction:
    """Exact ``g o f``; a MonotoneMap when both factors are."""
    pts, left, right = _compose_pl(g, f)
    cls = MonotoneMap if isinstance(g, MonotoneMap) and isinstance(f, MonotoneMap) else PLFunction
    return cls(tuple(pts), left, right)


def pl_invert(f: MonotoneMap) -> MonotoneMap:
    pts = [(y, x) for x, y in f.anchors]
    if f.direction is Direction.INC:
        return MonotoneMap(tuple(pts), 1 / f.left_slope, 1 / f.right_slope)
    # y -> -inf corresponds to x -> +inf
    return MonotoneMap(tuple(pts), 1 / f.right_slope, 1 / f.left_slope)


@dataclass(frozen=True)
class QuasiPeriodicMap:
    """Monotone map with ``f(x + 1) == f(x) + c``, given on ``[0, 1]``.

    Outside the fundamental domain ``f(x) = f(x - floor(x)) + floor(x) * c``.
    """

    anchors: tuple[Anchor, ...]
    c: Rational

    def __post_init__(self):
        c = q(self.c)
        if c == 0:
            raise ZeroPeriod("quasi-period must be nonzero")
        pts = sorted((q(x), q(y)) for x, y in self.anchors)
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 1:
            raise ValueError("fundamental anchors must start at x=0 and end at x=1")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x0 == x1:
                raise ValueError(f"duplicate anchor abscissa {x0}")
        if pts[-1][1] - pts[0][1] != c:
            raise EndpointMismatch(
                f"f(1) - f(0) = {pts[-1][1] - pts[0][1]} but c = {c}"
            )
        sign = 1 if c > 0 else -1
        inner = _slopes(pts, Rational(sign), Rational(sign))[1:-1]
        if any(s * sign <= 0 for s in inner):
            raise NotMonotone("fundamental anchors are not strictly monotone in the direction of c")
        kept = [pts[0]]
        for i in range(1, len(pts) - 1):
            if inner[i - 1] != inner[i]:
                kept.append(pts[i])
        kept.append(pts[-1])
        object.__setattr__(self, "anchors", tuple(kept))
        object.__setattr__(self, "c", c)

    @property
    def direction(self) -> Direction:
        return Direction.INC if self.c > 0 else Direction.DEC

    @cached_property
    def fundamental(self) -> MonotoneMap:
        """The restriction to ``[0, 1]``, continued affinely past the ends."""
        s = _slopes(self.anchors, Rational(1), Rational(1))
        return MonotoneMap(self.anchors, s[1], s[-2])

    def __call__(self, x) -> Rational:
        x = q(x)
        n = math.floor(x)
        return self.fundamental(x - n) + n * self.c

    def inverse_eval(self, y) -> Rational:
        y = q(y)
        f0 = self.anchors[0][1]
        n = math.floor((y - f0) / self.c)
        return n + self.fundamental.inverse_eval(y - n * self.c)

    def breakpoints_in(self, lo: Rational, hi: Rational) -> list[Rational]:
        """Every anchor translate ``k + a`` inside ``[lo, hi]`` (integers included)."""
        base = [x for x, _ in self.anchors[:-1]]
        out = []
        for k in range(math.floor(lo) - 1, math.ceil(hi) + 1):
            out.extend(k + a for a in base if lo <= k + a <= hi)
        return sorted(out)


MapLike = Union[MonotoneMap, QuasiPeriodicMap]


def qp_from_fundamental(anchors: Iterable, c) -> QuasiPeriodicMap:
    return QuasiPeriodicMap(tuple((q(x), q(y)) for x, y in anchors), q(c))


def is_affine(f: MapLike) -> bool:
    if isinstance(f, QuasiPeriodicMap):
        return len(f.anchors) == 2
    return f.is_affine


def qp_quasi_period(f: MapLike) -> Optional[Rational]:
    """``c`` with ``f(x + 1) == f(x) + c`` identically, else ``None``.

    A plain PL map has finitely many breakpoints, so it can only be
    quasi-periodic when it is affine.
    """
    if isinstance(f, QuasiPeriodicMap):
        return f.c
    if f.is_affine:
        return f.left_slope
    return None


def as_quasi_periodic(f: MapLike) -> QuasiPeriodicMap:
    if isinstance(f, QuasiPeriodicMap):
        return f
    if not f.is_affine:
        raise NotQuasiPeriodic("a non-affine plain map has no quasi-period")
    return QuasiPeriodicMap(((Rational(0), f(0)), (Rational(1), f(1))), f.left_slope)


def _breaks(f: MapLike, lo: Rational, hi: Rational) -> list[Rational]:
    return f.breakpoints_in(lo, hi)


def _constant_on(points: Iterable[Rational], fn) -> Optional[Rational]:
    values = {fn(p) for p in points}
    return values.pop() if len(values) == 1 else None


def qp_compose(g: MapLike, f: MapLike) -> QuasiPeriodicMap:
    """Exact ``g o f`` for quasi-periodic factors.

    ``(g o f)(x + 1) - (g o f)(x) = D(f(x))`` with ``D(y) = g(y + c_f) - g(y)``,
    and ``D`` has period 1, so the composite is quasi-periodic exactly when
    ``D`` is constant on ``[0, 1]``.  Raises :class:`NotQuasiPeriodic`
    otherwise (typical when ``c_f`` is not an integer).
    """
    g, f = as_quasi_periodic(g), as_quasi_periodic(f)
    cf = f.c
    probe = {Rational(0), Rational(1), *_breaks(g, Rational(0), Rational(1))}
    probe.update(b - cf for b in _breaks(g, cf, 1 + cf))
    c = _constant_on(probe, lambda y: g(y + cf) - g(y))
    if c is None:
        raise NotQuasiPeriodic("g(y + c_f) - g(y) is not constant; composite is not quasi-periodic")
    lo, hi = sorted((f(0), f(1)))
    xs = {Rational(0), Rational(1), *_breaks(f, Rational(0), Rational(1))}
    xs.update(f.inverse_eval(b) for b in _breaks(g, lo, hi))
    return QuasiPeriodicMap(tuple((x, g(f(x))) for x in sorted(xs)), c)


def qp_invert(f: MapLike) -> QuasiPeriodicMap:
    """Inverse of a quasi-periodic map, when it is quasi-periodic again.

    ``E(y) = f^-1(y + 1) - f^-1(y)`` has period ``|c|``; always constant for
    ``c = +-1/k``, otherwise only in special cases.
    """
    f = as_quasi_periodic(f)

    def hbreaks(lo, hi):
        a, b = sorted((f.inverse_eval(lo), f.inverse_eval(hi)))
        return [f(x) for x in _breaks(f, a, b)]

    span = max(Rational(1), abs(f.c))
    probe = {Rational(0), span, *hbreaks(Rational(0), span)}
    probe.update(b - 1 for b in hbreaks(Rational(1), span + 1))
    c = _constant_on(probe, lambda y: f.inverse_eval(y + 1) - f.inverse_eval(y))
    if c is None:
        raise NotQuasiPeriodic(f"inverse of a map with c = {f.c} is not quasi-periodic")
    ys = {Rational(0), Rational(1), *hbreaks(Rational(0), Rational(1))}
    return QuasiPeriodicMap(tuple((y, f.inverse_eval(y)) for y in sorted(ys)), c)


def compose(g: MapLike, f: MapLike) -> MapLike:
    """``g o f``, staying in the plain class when possible."""
    if isinstance(g, MonotoneMap) and isinstance(f, MonotoneMap):
        return pl_compose(g, f)
    return qp_compose(g, f)


def invert(f: MapLike) -> MapLike:
    if isinstance(f, MonotoneMap):
        return pl_invert(f)
    return qp_invert(f)


def inverse_eval(f: MapLike, y) -> Rational:
    return f.inverse_eval(y)


def direction_of(f: MapLike) -> Direction:
    return f.direction


# -- JSON -------------------------------------------------------------------

def map_to_json(f: Union[PLFunction, QuasiPeriodicMap]) -> dict:
    anchors = [[qstr(x), qstr(y)] for x, y in f.anchors]
    if isinstance(f, QuasiPeriodicMap):
        return {"anchors": anchors, "direction": f.direction.label, "c": qstr(f.c)}
    out = {"anchors": anchors, "left_slope": qstr(f.left_slope), "right_slope": qstr(f.right_slope)}
    if isinstance(f, MonotoneMap):
        out["direction"] = f.direction.label
    return out


def _field(obj: dict, key: str):
    if key not in obj:
        raise KeyError(key)
    return obj[key]


def map_from_json(obj: dict, monotone: bool = True):
    """Parse a map object; ``"c"`` selects the quasi-periodic form.

    A stated ``direction`` is checked against the anchors.
    """
    if not isinstance(obj, dict):
        raise ValueError("map must be a JSON object")
    anchors = tuple((q(x), q(y)) for x, y in _field(obj, "anchors"))
    if "c" in obj:
        f = QuasiPeriodicMap(anchors, q(obj["c"]))
    else:
        cls = MonotoneMap if monotone else PLFunction
        f = cls(anchors, q(_field(obj, "left_slope")), q(_field(obj, "right_slope")))
    stated = obj.get("direction")
    if stated is not None and isinstance(f, (MonotoneMap, QuasiPeriodicMap)):
        if stated not in ("inc", "dec"):
            raise ValueError(f"direction must be 'inc' or 'dec', got {stated!r}")
        if stated != f.direction.label:
            raise NotMonotone(f"direction says {stated!r} but anchors are {f.direction.label!r}")
    return f
