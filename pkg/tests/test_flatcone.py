import pytest
from hypothesis import given, settings

from causal2d.exactmaps import Rational, affine, identity
from causal2d.flatcone import (
    CausalAutomorphism,
    DirectionMismatch,
    Event,
    Kind,
    NullEvent,
    SampleSpec,
    auto_apply,
    auto_apply_inverse,
    auto_compose,
    auto_from_json,
    auto_identity,
    auto_invert,
    auto_to_json,
    causally_leq,
    chronologically_ll,
    event_coords,
    null_coords,
    null_leq,
    verify_order_iso,
)
from causal2d.testing import automorphisms, events

R = Rational
E = Event


def proper(f, g=None):
    return CausalAutomorphism(Kind.PROPER, f, g if g is not None else f)


reflection = CausalAutomorphism(Kind.FLIP, affine(-1), affine(-1))


def test_null_coordinates():
    assert null_coords(E(0, 1)) == NullEvent(1, -1)
    assert null_coords(E(1, 0)) == NullEvent(1, 1)
    assert event_coords(NullEvent(8, 0)) == E(4, 4)


@pytest.mark.parametrize("q_, leq, ll", [
    (E(0, 1), True, True),
    (E(1, 1), True, False),
    (E(2, 1), False, False),
    (E(0, -1), False, False),
    (E(0, 0), True, False),
])
def test_order_predicates(q_, leq, ll):
    o = E(0, 0)
    assert causally_leq(o, q_) is leq
    assert chronologically_ll(o, q_) is ll


@given(events(), events())
def test_null_order_agrees(p, q_):
    assert causally_leq(p, q_) == null_leq(null_coords(p), null_coords(q_))


def test_direction_mismatch():
    with pytest.raises(DirectionMismatch):
        CausalAutomorphism(Kind.PROPER, identity(), affine(-1))
    with pytest.raises(DirectionMismatch):
        CausalAutomorphism(Kind.FLIP, identity(), identity())


def test_apply_examples():
    assert auto_apply(auto_identity(), E(3, 4)) == E(3, 4)
    assert auto_apply(proper(affine(2)), E(0, 1)) == E(0, 2)
    assert auto_apply(reflection, E(1, 0)) == E(-1, 0)
    assert auto_apply(reflection, E(R(1, 3), 2)) == E(R(-1, 3), 2)


def test_compose_examples():
    assert auto_compose(reflection, reflection) == auto_identity()
    got = auto_compose(proper(affine(2)), proper(affine(1, 1), affine(1, -1)))
    assert got == proper(affine(2, 2), affine(2, -2))
    assert auto_invert(proper(affine(2), affine(R(1, 2)))) == proper(affine(R(1, 2)), affine(2))


@given(automorphisms(), automorphisms(), events())
def test_compose_pointwise(F, G, p):
    assert auto_compose(G, F)(p) == G(F(p))


@given(automorphisms(), events())
def test_inverse(F, p):
    assert auto_invert(F)(F(p)) == p
    assert auto_apply_inverse(F, F(p)) == p
    assert auto_compose(auto_invert(F), F) == auto_identity()


@given(automorphisms(), automorphisms(), automorphisms())
@settings(max_examples=40)
def test_group_laws(F, G, H):
    assert auto_compose(H, auto_compose(G, F)) == auto_compose(auto_compose(H, G), F)
    assert auto_invert(auto_compose(G, F)) == auto_compose(auto_invert(F), auto_invert(G))


@given(automorphisms(), events(), events())
def test_preserves_order(F, p, q_):
    assert causally_leq(p, q_) == causally_leq(F(p), F(q_))
    assert chronologically_ll(p, q_) == chronologically_ll(F(p), F(q_))


def test_uniqueness_within_pl():
    # distinct pairs act differently: the pair is recovered from the action
    F = proper(affine(2, 1), affine(3))
    recovered_phi = [null_coords(F(event_coords(NullEvent(u, 0)))).u for u in range(-3, 4)]
    recovered_psi = [null_coords(F(event_coords(NullEvent(0, v)))).v for v in range(-3, 4)]
    assert recovered_phi == [F.phi(u) for u in range(-3, 4)]
    assert recovered_psi == [F.psi(v) for v in range(-3, 4)]


class TestVerify:
    def test_identity_and_homothety(self):
        assert verify_order_iso(auto_identity(), SampleSpec(pairs=500)).passed
        assert verify_order_iso(proper(affine(2)), SampleSpec(seed=3, pairs=10_000)).passed

    def test_time_reflection_fails(self):
        def swap(e):
            n = null_coords(e)
            return event_coords(NullEvent(n.v, n.u))

        report = verify_order_iso(swap, SampleSpec(pairs=300))
        assert not report.passed
        p, q_ = report.failures[0]
        assert causally_leq(p, q_) != causally_leq(swap(p), swap(q_)) or \
            causally_leq(q_, p) != causally_leq(swap(q_), swap(p)) or \
            chronologically_ll(p, q_) != chronologically_ll(swap(p), swap(q_)) or \
            chronologically_ll(q_, p) != chronologically_ll(swap(q_), swap(p))

    def test_planted_non_product(self):
        def planted(e):
            n = null_coords(e)
            return event_coords(NullEvent((3 * n.u - n.v) / 2, n.v))

        assert verify_order_iso(planted, SampleSpec(pairs=1000)).failures

    def test_sampler_is_deterministic(self):
        a = list(SampleSpec(seed=9, pairs=50).iter_pairs())
        b = list(SampleSpec(seed=9, pairs=50).iter_pairs())
        assert a == b

    def test_sampler_hits_null_pairs(self):
        pairs = list(SampleSpec(pairs=300).iter_pairs())
        null = [(p, q_) for p, q_ in pairs if abs(q_.t - p.t) == abs(q_.x - p.x) and p != q_]
        assert len(null) > 50


@given(automorphisms())
def test_json_round_trip(F):
    assert auto_from_json(auto_to_json(F)) == F
