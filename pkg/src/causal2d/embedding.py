"""Globally hyperbolic domains of the plane and the Cauchy-surface embedding.

A domain is described in null coordinates as
``{(u, v) : u in (a, b), L(u) < v < R(u)}`` and must contain the x-axis
(the diagonal ``u = v``) as a Cauchy surface.  An increasing bijection ``f``
of the axis extends to the whole domain as ``(u, v) -> (f(u), f(v))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .exactmaps import (
    Rational,
    Direction,
    MonotoneMap,
    PLFunction,
    compose,
    invert,
    map_from_json,
    map_to_json,
    pl_compose,
    pl_invert,
    q,
    qstr,
)
from .flatcone import (
    CausalAutomorphism,
    Event,
    Kind,
    NullEvent,
    Report,
    event_coords,
    null_coords,
)


class OutsideDomain(ValueError):
    pass


class NotIncreasing(ValueError):
    pass


Bound = Optional[PLFunction]


def _positive_on(fn: PLFunction, lo: Optional[Rational], hi: Optional[Rational]) -> bool:
    """Exact test of ``fn > 0`` on the open interval ``(lo, hi)``."""
    inner = [b for b in fn.breakpoints if (lo is None or b > lo) and (hi is None or b < hi)]
    if any(fn(b) <= 0 for b in inner):
        return False
    pts = [lo, *inner, hi]
    for a, b in zip(pts, pts[1:]):
        if a is None and b is None:
            return fn.left_slope == 0 and fn(0) > 0
        if a is None:
            s = _slope_left_of(fn, b)
            if fn(b) < 0 or s > 0 or (fn(b) == 0 and s == 0):
                return False
        elif b is None:
            s = _slope_right_of(fn, a)
            if fn(a) < 0 or s < 0 or (fn(a) == 0 and s == 0):
                return False
        elif fn(a) < 0 or fn(b) < 0 or (fn(a) == 0 and fn(b) == 0):
            return False
    return True


def _slope_left_of(fn: PLFunction, x: Rational) -> Rational:
    for lo, hi, s in fn.segments():
        if (lo is None or lo < x) and (hi is None or x <= hi):
            return s
    return fn.right_slope


def _slope_right_of(fn: PLFunction, x: Rational) -> Rational:
    for lo, hi, s in fn.segments():
        if (lo is None or lo <= x) and (hi is None or x < hi):
            return s
    return fn.right_slope


def _diag_minus(bound: PLFunction, sign: int) -> PLFunction:
    """``sign * (u - bound(u))`` as a PL function."""
    pts = tuple((x, sign * (x - y)) for x, y in bound.anchors)
    return PLFunction(pts, sign * (1 - bound.left_slope), sign * (1 - bound.right_slope))


@dataclass(frozen=True)
class Domain:
    """Open set ``u in u_range, lower(u) < v < upper(u)``; ``None`` is infinite."""

    u_lo: Optional[Rational] = None
    u_hi: Optional[Rational] = None
    lower: Bound = None
    upper: Bound = None

    def __post_init__(self):
        lo = None if self.u_lo is None else q(self.u_lo)
        hi = None if self.u_hi is None else q(self.u_hi)
        if lo is not None and hi is not None and lo >= hi:
            raise ValueError("empty u_range")
        object.__setattr__(self, "u_lo", lo)
        object.__setattr__(self, "u_hi", hi)
        if self.lower is not None and not _positive_on(_diag_minus(self.lower, 1), lo, hi):
            raise ValueError("lower bound must stay strictly below the diagonal")
        if self.upper is not None and not _positive_on(_diag_minus(self.upper, -1), lo, hi):
            raise ValueError("upper bound must stay strictly above the diagonal")

    def in_u_range(self, u: Rational) -> bool:
        return (self.u_lo is None or u > self.u_lo) and (self.u_hi is None or u < self.u_hi)

    def contains_null(self, n: NullEvent) -> bool:
        if not self.in_u_range(n.u):
            return False
        if self.lower is not None and not self.lower(n.u) < n.v:
            return False
        return self.upper is None or n.v < self.upper(n.u)

    def __contains__(self, e: Event) -> bool:
        return self.contains_null(null_coords(e))


def plane() -> Domain:
    return Domain()


def strip(half_width) -> Domain:
    """``|t| < half_width``, i.e. ``u - 2w < v < u + 2w``."""
    w = q(half_width)
    return Domain(lower=PLFunction(((0, -2 * w), (1, 1 - 2 * w)), 1, 1),
                  upper=PLFunction(((0, 2 * w), (1, 1 + 2 * w)), 1, 1))


def null_square(lo, hi) -> Domain:
    """``u, v in (lo, hi)`` -- a causal diamond."""
    lo, hi = q(lo), q(hi)
    return Domain(lo, hi, PLFunction(((0, lo), (1, lo)), 0, 0), PLFunction(((0, hi), (1, hi)), 0, 0))


@dataclass(frozen=True)
class ShadowInterval:
    left: Rational
    right: Rational

    def __post_init__(self):
        if self.left > self.right:
            raise ValueError("shadow interval with left > right")


def shadow(p: Event, d: Optional[Domain] = None) -> ShadowInterval:
    """Where the cone of ``p`` toward the axis meets the axis.

    Past cone for events with ``t >= 0``, future cone for ``t < 0``.
    """
    if d is not None and p not in d:
        raise OutsideDomain(f"({p.x}, {p.t}) is not in the domain")
    n = null_coords(p)
    if p.t >= 0:
        return ShadowInterval(n.v, n.u)
    return ShadowInterval(n.u, n.v)


def event_from_shadow(s: ShadowInterval, future: bool) -> Event:
    """The unique event on the given side of the axis with shadow ``s``."""
    if future:
        return event_coords(NullEvent(s.right, s.left))
    return event_coords(NullEvent(s.left, s.right))


def _require_increasing(f: MonotoneMap):
    if not isinstance(f, MonotoneMap) or f.direction is not Direction.INC:
        raise NotIncreasing("the Cauchy-surface map must be an increasing bijection")


@dataclass(frozen=True)
class EmbeddingMap:
    """Extension ``i_f`` of an axis homeomorphism to a domain."""

    f: MonotoneMap
    domain: Domain

    def __call__(self, p: Event) -> Event:
        if p not in self.domain:
            raise OutsideDomain(f"({p.x}, {p.t}) is not in the domain")
        n = null_coords(p)
        return event_coords(NullEvent(self.f(n.u), self.f(n.v)))

    def via_shadow(self, p: Event) -> Event:
        """Same map, built from the shadow: transport ``S_p`` and rebuild."""
        s = shadow(p, self.domain)
        moved = ShadowInterval(self.f(s.left), self.f(s.right))
        return event_from_shadow(moved, future=p.t >= 0)

    def inverse(self, p: Event) -> Event:
        n = null_coords(p)
        return event_coords(NullEvent(self.f.inverse_eval(n.u), self.f.inverse_eval(n.v)))

    @property
    def image(self) -> Domain:
        return image_domain(self.f, self.domain)


def extend_embedding(f: MonotoneMap, d: Domain) -> EmbeddingMap:
    _require_increasing(f)
    return EmbeddingMap(f, d)


def image_domain(f: MonotoneMap, d: Domain) -> Domain:
    """Push the domain forward: bounds become ``f o L o f^-1``."""
    _require_increasing(f)
    finv = pl_invert(f)

    def push(bound):
        return None if bound is None else pl_compose(f, pl_compose(bound, finv))

    return Domain(
        None if d.u_lo is None else f(d.u_lo),
        None if d.u_hi is None else f(d.u_hi),
        push(d.lower),
        push(d.upper),
    )


def conjugating_auto(f: MonotoneMap, g: MonotoneMap) -> CausalAutomorphism:
    """``F`` with ``F(i_f(M)) = i_g(M)``: both null maps equal ``g o f^-1``."""
    _require_increasing(f)
    _require_increasing(g)
    h = compose(g, invert(f))
    return CausalAutomorphism(Kind.PROPER, h, h)


# -- Cauchy-axis validation ---------------------------------------------------

def _segment_inside(d: Domain, v0: Rational, a: Rational, b: Rational) -> bool:
    """Does the constant-v segment ``{(u, v0) : a <= u <= b}`` stay in ``d``?

    Exact: the conditions are piecewise linear in u, so endpoints and
    breakpoints decide.  The diagonal endpoint only needs to be approached.
    """
    if not (d.in_u_range(a) and d.in_u_range(b)):
        return False
    probes = {a, b}
    for bound in (d.lower, d.upper):
        if bound is not None:
            probes.update(x for x in bound.breakpoints if a <= x <= b)
    for u in probes:
        if d.lower is not None and not d.lower(u) < v0:
            return False
        if d.upper is not None and not v0 < d.upper(u):
            return False
    return True


@dataclass(frozen=True)
class DomainSampler:
    seed: int = 0
    points: int = 200
    radius: int = 4
    denominators: tuple[int, ...] = (1, 2, 3, 4, 5, 8)

    def iter_points(self, d: Domain, max_tries: int = 100_000):
        rng = random.Random(self.seed)
        found = tries = 0
        while found < self.points and tries < max_tries:
            tries += 1
            den = rng.choice(self.denominators)
            r = self.radius * den
            e = Event(Rational(rng.randint(-r, r), den), Rational(rng.randint(-r, r), den))
            if e in d:
                found += 1
                yield e


def verify_cauchy_axis(d: Domain, sampler: DomainSampler = DomainSampler()) -> Report:
    """Sampled necessary condition for the axis being a Cauchy surface.

    From each sampled point both null segments down (or up) to the axis must
    stay in the domain.  The constant-u one is automatic; the constant-v one
    is checked exactly.
    """
    report = Report()
    for p in sampler.iter_points(d):
        n = null_coords(p)
        report.checked += 1
        lo, hi = sorted((n.u, n.v))
        if not _segment_inside(d, n.v, lo, hi):
            foot = event_coords(NullEvent(n.v, n.v))
            report.failures.append((p, foot))
    return report


# -- JSON -------------------------------------------------------------------

def _end_to_json(x: Optional[Rational], inf: str) -> str:
    return inf if x is None else qstr(x)


def _end_from_json(s) -> Optional[Rational]:
    if isinstance(s, str) and s.strip().lstrip("+-") in ("inf", "infinity"):
        return None
    return q(s)


def domain_to_json(d: Domain) -> dict:
    return {
        "u_range": [_end_to_json(d.u_lo, "-inf"), _end_to_json(d.u_hi, "inf")],
        "lower": "-inf" if d.lower is None else map_to_json(d.lower),
        "upper": "inf" if d.upper is None else map_to_json(d.upper),
    }


def domain_from_json(obj: dict) -> Domain:
    lo, hi = obj.get("u_range", ["-inf", "inf"])

    def bound(key, inf):
        b = obj.get(key, inf)
        if isinstance(b, str):
            if b != inf:
                raise ValueError(f"{key} must be a PL object or {inf!r}")
            return None
        return map_from_json(b, monotone=False)

    return Domain(_end_from_json(lo), _end_from_json(hi), bound("lower", "-inf"), bound("upper", "inf"))
