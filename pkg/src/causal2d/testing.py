"""Seeded random objects and hypothesis strategies for the test-suite.

Every generator takes a ``random.Random`` so that acceptance runs can be
replayed from a single seed; the strategies just draw that seed.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from .exactmaps import Direction, MonotoneMap, QuasiPeriodicMap, Rational
from .flatcone import CausalAutomorphism, Event, Kind

DENOMS = (1, 2, 3, 4, 5, 6, 8)


def rand_rational(rng: random.Random, radius: int = 4, denoms=DENOMS) -> Rational:
    d = rng.choice(denoms)
    return Rational(rng.randint(-radius * d, radius * d), d)


def rand_slope(rng: random.Random) -> Rational:
    """Positive slope in ``[1/4, 4]`` with a small denominator."""
    return Rational(rng.randint(1, 16), rng.choice((1, 2, 3, 4)))


def rand_pl_map(rng: random.Random, direction: Direction = Direction.INC,
                max_breaks: int = 4) -> MonotoneMap:
    k = rng.randint(0, max_breaks)
    xs = sorted({rand_rational(rng) for _ in range(k + 1)})
    y = rand_rational(rng)
    anchors = [(xs[0], y)]
    for a, b in zip(xs, xs[1:]):
        y += direction * rand_slope(rng) * (b - a)
        anchors.append((b, y))
    return MonotoneMap(tuple(anchors), direction * rand_slope(rng), direction * rand_slope(rng))


def rand_qp_map(rng: random.Random, c, max_breaks: int = 3) -> QuasiPeriodicMap:
    """Quasi-periodic map with quasi-period ``c`` and a random fundamental piece."""
    c = Rational(c)
    k = rng.randint(0, max_breaks)
    xs = sorted({Rational(rng.randint(1, 23), 24) for _ in range(k)})
    # strictly monotone cut points of [0, c] at the chosen abscissae
    cuts = sorted({Rational(rng.randint(1, 23), 24) for _ in range(len(xs))})
    while len(cuts) < len(xs):
        xs.pop()
    y0 = Rational(rng.randint(-8, 8), 4)
    anchors = [(Rational(0), y0), *((x, y0 + c * w) for x, w in zip(xs, cuts)), (Rational(1), y0 + c)]
    return QuasiPeriodicMap(tuple(anchors), c)


def rand_auto(rng: random.Random, kind: Kind = Kind.PROPER, max_breaks: int = 4) -> CausalAutomorphism:
    d = Direction.INC if kind is Kind.PROPER else Direction.DEC
    return CausalAutomorphism(kind, rand_pl_map(rng, d, max_breaks), rand_pl_map(rng, d, max_breaks))


def rand_cyl_auto(rng: random.Random, kind: Kind = Kind.PROPER) -> CausalAutomorphism:
    c = 1 if kind is Kind.PROPER else -1
    return CausalAutomorphism(kind, rand_qp_map(rng, c), rand_qp_map(rng, c))


def rand_event(rng: random.Random, radius: int = 4) -> Event:
    return Event(rand_rational(rng, radius), rand_rational(rng, radius))


# -- hypothesis ---------------------------------------------------------------

seeds = st.integers(0, 2**32 - 1)
kinds = st.sampled_from(list(Kind))
directions = st.sampled_from(list(Direction))


def rationals(radius: int = 4):
    return st.builds(lambda n, d: Rational(n, d),
                     st.integers(-radius * 8, radius * 8), st.sampled_from(DENOMS))


def events(radius: int = 4):
    return st.builds(Event, rationals(radius), rationals(radius))


def pl_maps(direction=None, max_breaks: int = 4):
    dirs = st.just(direction) if direction is not None else directions
    return st.builds(lambda s, d: rand_pl_map(random.Random(s), d, max_breaks), seeds, dirs)


def qp_maps(c=None):
    cs = st.just(c) if c is not None else st.sampled_from(
        [Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(-3, 2)])
    return st.builds(lambda s, cc: rand_qp_map(random.Random(s), cc), seeds, cs)


def automorphisms(kind=None):
    ks = st.just(kind) if kind is not None else kinds
    return st.builds(lambda s, k: rand_auto(random.Random(s), k), seeds, ks)


def cylinder_automorphisms(kind=None):
    ks = st.just(kind) if kind is not None else kinds
    return st.builds(lambda s, k: rand_cyl_auto(random.Random(s), k), seeds, ks)
