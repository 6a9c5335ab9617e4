"""The flat cylinder E = S^1 x R, its universal cover and the quotient N(D)/D.

Angles are measured in full turns, so the covering map is
``(x, t) -> (x mod 1, t)`` and the deck group acts by ``(u, v) -> (u+m, v+m)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .exactmaps import (
    Rational,
    MapLike,
    affine,
    as_quasi_periodic,
    qp_quasi_period,
    q,
    qstr,
)
from .flatcone import (
    CausalAutomorphism,
    Event,
    Kind,
    auto_compose,
    auto_invert,
    causally_leq,
)


class InvalidQuasiPeriod(ValueError):
    pass


class NotQuasiPeriodicPair(ValueError):
    pass


@dataclass(frozen=True)
class CylPoint:
    theta: Rational
    t: Rational

    def __post_init__(self):
        theta = q(self.theta)
        if not 0 <= theta < 1:
            raise ValueError(f"theta must lie in [0, 1), got {theta}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "t", q(self.t))

    def lift(self, n: int = 0) -> Event:
        return Event(self.theta + n, self.t)


def project(e: Event) -> CylPoint:
    return CylPoint(e.x % 1, e.t)


def cyl_leq(p: CylPoint, q_: CylPoint) -> bool:
    """Causal order on E, decided on the cover.

    ``p <= q`` iff the lift of p at theta lies below some deck translate of the
    lift of q; only translates with ``|n| <= dt + 1`` can matter.
    """
    dt = q_.t - p.t
    if dt < 0:
        return False
    base = p.lift()
    return any(
        causally_leq(base, q_.lift(n))
        for n in range(math.ceil(-dt - 1), math.floor(dt + 1) + 1)
    )


def deck(m: int) -> CausalAutomorphism:
    """Deck transformation ``(u, v) -> (u + m, v + m)``, i.e. ``x -> x + m``."""
    shift = affine(1, int(m))
    return CausalAutomorphism(Kind.PROPER, shift, shift)


def common_quasi_period(g: CausalAutomorphism) -> Optional[Rational]:
    cp, cq = qp_quasi_period(g.phi), qp_quasi_period(g.psi)
    if cp is None or cp != cq:
        return None
    return cp


def conjugate_deck(g: CausalAutomorphism, m: int) -> Rational:
    """Translation amount of ``g o deck(m) o g^-1``.

    The conjugate is always the null-diagonal translation by ``c * m``; it is a
    deck transformation only when that number is an integer.  The claim is
    checked exactly on a window of points covering a full period.
    """
    c = common_quasi_period(g)
    if c is None:
        raise NotQuasiPeriodicPair("conjugation needs both maps quasi-periodic with a common c")
    shift = c * m
    samples = {Rational(k, 7) for k in range(-14, 15)}
    for f in (g.phi, g.psi):
        f = as_quasi_periodic(f)
        samples.update(f.breakpoints_in(Rational(-2), Rational(2)))
        samples.update(f(b) for b in f.breakpoints_in(Rational(-2), Rational(2)))
    for a in samples:
        for f in (g.phi, g.psi):
            if f(f.inverse_eval(a) + m) != a + shift:
                raise AssertionError(f"conjugate is not a translation at {a}")
    return shift


def satisfies_paper_condition(phi: MapLike, psi: MapLike) -> bool:
    """The literal membership test: a common quasi-period in (1/2)Z, nonzero."""
    cp, cq = qp_quasi_period(phi), qp_quasi_period(psi)
    if cp is None or cp != cq or cp == 0:
        return False
    return (2 * cp).denominator == 1


class DescentVerdict(enum.Enum):
    AUTOMORPHISM = "automorphism"
    WELL_DEFINED_NOT_INJECTIVE = "well_defined_not_injective"
    NOT_WELL_DEFINED = "not_well_defined"


def descends(g: CausalAutomorphism) -> DescentVerdict:
    """Decide whether ``g`` induces a causal automorphism of E.

    Well defined iff a deck shift of the input is a deck shift of the output:
    both maps quasi-periodic with one integer ``c``.  The induced map is then
    injective iff ``m -> c m`` is onto the integers, i.e. ``c = +-1``.
    """
    c = common_quasi_period(g)
    if c is None or c.denominator != 1:
        return DescentVerdict.NOT_WELL_DEFINED
    if abs(c) != 1:
        return DescentVerdict.WELL_DEFINED_NOT_INJECTIVE
    return DescentVerdict.AUTOMORPHISM


@dataclass(frozen=True)
class CylinderAutomorphism:
    """Coset ``g D`` of the normalizer, held by its canonical representative."""

    rep: CausalAutomorphism

    @property
    def kind(self) -> Kind:
        return self.rep.kind

    def __call__(self, p: CylPoint) -> CylPoint:
        return descend_apply(self, p)


def _checked_pair(g: CausalAutomorphism) -> CausalAutomorphism:
    try:
        phi, psi = as_quasi_periodic(g.phi), as_quasi_periodic(g.psi)
    except ValueError as exc:
        raise InvalidQuasiPeriod(str(exc)) from exc
    want = 1 if g.kind is Kind.PROPER else -1
    if phi.c != want or psi.c != want:
        raise InvalidQuasiPeriod(
            f"{g.kind.value} cylinder automorphisms need c = {want}, got {phi.c} and {psi.c}"
        )
    return CausalAutomorphism(g.kind, phi, psi)


def canonical_rep(g) -> CylinderAutomorphism:
    """Move ``g`` along its coset until ``0 <= phi(0) < 1``.

    ``(g o deck(m)).phi(0) = phi(0) + c m`` with ``c = +-1``.
    """
    g = _checked_pair(g.rep if isinstance(g, CylinderAutomorphism) else g)
    c = g.phi.c
    m = -math.floor(g.phi(0)) * c
    rep = auto_compose(g, deck(int(m))) if m else g
    assert 0 <= rep.phi(0) < 1
    return CylinderAutomorphism(rep)


def cylinder_auto(kind, phi: MapLike, psi: MapLike) -> CylinderAutomorphism:
    return canonical_rep(CausalAutomorphism(Kind(kind), phi, psi))


def descend_apply(g, p: CylPoint) -> CylPoint:
    """Induced action on E: lift, act on the cover, project."""
    rep = g.rep if isinstance(g, CylinderAutomorphism) else _checked_pair(g)
    return project(rep(p.lift()))


def quotient_compose(g1: CylinderAutomorphism, g2: CylinderAutomorphism) -> CylinderAutomorphism:
    return canonical_rep(auto_compose(g1.rep, g2.rep))


def quotient_invert(g: CylinderAutomorphism) -> CylinderAutomorphism:
    return canonical_rep(auto_invert(g.rep))


def quotient_identity() -> CylinderAutomorphism:
    return canonical_rep(deck(0))


# -- JSON -------------------------------------------------------------------

def cyl_to_json(p: CylPoint) -> dict:
    return {"theta": qstr(p.theta), "t": qstr(p.t)}


def cyl_from_json(obj: dict) -> CylPoint:
    return CylPoint(q(obj["theta"]), q(obj["t"]))
