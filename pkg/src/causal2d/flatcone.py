"""Events, causal order and causal automorphisms of flat 2D Minkowski space.

Null coordinates are ``u = x + t`` and ``v = x - t``.  The future of an event
is the quadrant ``du >= 0, dv <= 0``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .exactmaps import (
    Rational,
    Direction,
    MapLike,
    compose,
    identity,
    invert,
    map_from_json,
    map_to_json,
    q,
    qstr,
)


class DirectionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    x: Rational
    t: Rational

    def __post_init__(self):
        object.__setattr__(self, "x", q(self.x))
        object.__setattr__(self, "t", q(self.t))


@dataclass(frozen=True)
class NullEvent:
    u: Rational
    v: Rational

    def __post_init__(self):
        object.__setattr__(self, "u", q(self.u))
        object.__setattr__(self, "v", q(self.v))


def null_coords(e: Event) -> NullEvent:
    return NullEvent(e.x + e.t, e.x - e.t)


def event_coords(n: NullEvent) -> Event:
    return Event((n.u + n.v) / 2, (n.u - n.v) / 2)


def causally_leq(p: Event, q_: Event) -> bool:
    """``p <= q``: q lies in the closed future cone of p (p itself included)."""
    return q_.t - p.t >= abs(q_.x - p.x)


def chronologically_ll(p: Event, q_: Event) -> bool:
    return q_.t - p.t > abs(q_.x - p.x)


def null_leq(p: NullEvent, q_: NullEvent) -> bool:
    return q_.u >= p.u and q_.v <= p.v


class Kind(enum.Enum):
    PROPER = "proper"
    FLIP = "flip"

    def __mul__(self, other: "Kind") -> "Kind":
        return Kind.PROPER if self is other else Kind.FLIP


@dataclass(frozen=True)
class CausalAutomorphism:
    """A pair of monotone maps acting on null coordinates.

    ``PROPER`` (both maps increasing) sends ``(u, v)`` to ``(phi(u), psi(v))``;
    ``FLIP`` (both decreasing) sends it to ``(phi(v), psi(u))``.
    """

    kind: Kind
    phi: MapLike
    psi: MapLike

    def __post_init__(self):
        want = Direction.INC if self.kind is Kind.PROPER else Direction.DEC
        got = (self.phi.direction, self.psi.direction)
        if got[0] != got[1]:
            raise DirectionMismatch("phi and psi must be both increasing or both decreasing")
        if got[0] != want:
            raise DirectionMismatch(
                f"{self.kind.value} automorphisms need {want.label}reasing maps"
            )

    def null_apply(self, n: NullEvent) -> NullEvent:
        if self.kind is Kind.PROPER:
            return NullEvent(self.phi(n.u), self.psi(n.v))
        return NullEvent(self.phi(n.v), self.psi(n.u))

    def null_apply_inverse(self, n: NullEvent) -> NullEvent:
        if self.kind is Kind.PROPER:
            return NullEvent(self.phi.inverse_eval(n.u), self.psi.inverse_eval(n.v))
        return NullEvent(self.psi.inverse_eval(n.v), self.phi.inverse_eval(n.u))

    def __call__(self, e: Event) -> Event:
        return event_coords(self.null_apply(null_coords(e)))


def auto_from_pair(kind: Union[Kind, str], phi: MapLike, psi: MapLike) -> CausalAutomorphism:
    return CausalAutomorphism(Kind(kind), phi, psi)


def auto_identity() -> CausalAutomorphism:
    return CausalAutomorphism(Kind.PROPER, identity(), identity())


def auto_apply(F: CausalAutomorphism, e: Event) -> Event:
    return F(e)


def auto_apply_inverse(F: CausalAutomorphism, e: Event) -> Event:
    """Pointwise inverse; works even when the inverse maps are not representable."""
    return event_coords(F.null_apply_inverse(null_coords(e)))


def auto_compose(G: CausalAutomorphism, F: CausalAutomorphism) -> CausalAutomorphism:
    """``G o F``.  A flip on the outside swaps the roles of F's two maps."""
    inner_phi, inner_psi = (F.psi, F.phi) if G.kind is Kind.FLIP else (F.phi, F.psi)
    return CausalAutomorphism(G.kind * F.kind, compose(G.phi, inner_phi), compose(G.psi, inner_psi))


def auto_invert(F: CausalAutomorphism) -> CausalAutomorphism:
    if F.kind is Kind.PROPER:
        return CausalAutomorphism(Kind.PROPER, invert(F.phi), invert(F.psi))
    return CausalAutomorphism(Kind.FLIP, invert(F.psi), invert(F.phi))


# -- sampled order-isomorphism check -----------------------------------------

@dataclass(frozen=True)
class SampleSpec:
    """Deterministic recipe for random rational event pairs.

    Coordinates are ``k / d`` with ``|k / d| <= radius`` and ``d`` drawn from
    ``denominators``.  A third of the pairs are built on a null ray and a
    third inside the cone so every relation type is exercised.
    """

    seed: int = 0
    pairs: int = 1000
    radius: int = 4
    denominators: tuple[int, ...] = (1, 2, 3, 4, 5, 7, 8)

    def rational(self, rng: random.Random) -> Rational:
        d = rng.choice(self.denominators)
        return Rational(rng.randint(-self.radius * d, self.radius * d), d)

    def event(self, rng: random.Random) -> Event:
        return Event(self.rational(rng), self.rational(rng))

    def iter_pairs(self):
        rng = random.Random(self.seed)
        for i in range(self.pairs):
            p = self.event(rng)
            mode = i % 3
            if mode == 0:
                qq = self.event(rng)
            else:
                s = abs(self.rational(rng))
                side = rng.choice((-1, 1))
                dt = s if mode == 1 else s + abs(self.rational(rng))
                dt = dt if rng.random() < 0.5 else -dt
                qq = Event(p.x + side * s, p.t + dt)
            yield p, qq


@dataclass
class Report:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "failures": [{"p": event_to_json(p), "q": event_to_json(q_)} for p, q_ in self.failures],
            "passed": self.passed,
        }


PointMap = Callable[[Event], Event]


def verify_order_iso(F: Union[CausalAutomorphism, PointMap], sampler: SampleSpec,
                     max_failures: Optional[int] = 50) -> Report:
    """Check ``p <= q  <=>  F p <= F q`` (and the same for ``<<``) on sampled pairs.

    ``F`` may be any exact point map, which is how non-automorphisms are fed
    through the same path.
    """
    report = Report()
    for p, qq in sampler.iter_pairs():
        fp, fq = F(p), F(qq)
        report.checked += 1
        ok = (causally_leq(p, qq) == causally_leq(fp, fq)
              and causally_leq(qq, p) == causally_leq(fq, fp)
              and chronologically_ll(p, qq) == chronologically_ll(fp, fq)
              and chronologically_ll(qq, p) == chronologically_ll(fq, fp))
        if not ok and (max_failures is None or len(report.failures) < max_failures):
            report.failures.append((p, qq))
    return report


# -- JSON -------------------------------------------------------------------

def event_to_json(e: Event) -> dict:
    return {"x": qstr(e.x), "t": qstr(e.t)}


def event_from_json(obj: dict) -> Event:
    return Event(q(obj["x"]), q(obj["t"]))


def auto_to_json(F: CausalAutomorphism) -> dict:
    return {"kind": F.kind.value, "phi": map_to_json(F.phi), "psi": map_to_json(F.psi)}


def auto_from_json(obj: dict) -> CausalAutomorphism:
    return CausalAutomorphism(Kind(obj["kind"]), map_from_json(obj["phi"]), map_from_json(obj["psi"]))
