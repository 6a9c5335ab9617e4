import pytest
from hypothesis import given, settings

from causal2d.embedding import (
    Domain,
    DomainSampler,
    NotIncreasing,
    OutsideDomain,
    ShadowInterval,
    conjugating_auto,
    domain_from_json,
    domain_to_json,
    event_from_shadow,
    extend_embedding,
    image_domain,
    null_square,
    plane,
    shadow,
    strip,
    verify_cauchy_axis,
)
from causal2d.exactmaps import Direction, MonotoneMap, PLFunction, Rational, affine, identity
from causal2d.flatcone import (
    CausalAutomorphism,
    Event,
    Kind,
    auto_compose,
    auto_invert,
    causally_leq,
    chronologically_ll,
)
from causal2d.testing import automorphisms, events, pl_maps

R = Rational
E = Event
domains = [plane(), strip(1), null_square(-2, 2)]


def test_shadow_examples():
    assert shadow(E(0, 2)) == ShadowInterval(-2, 2)
    assert shadow(E(3, 0)) == ShadowInterval(3, 3)
    assert shadow(E(1, -1)) == ShadowInterval(0, 2)


@given(events())
def test_shadow_determines_event(p):
    assert event_from_shadow(shadow(p), future=p.t >= 0) == p


def test_shadow_outside_domain():
    with pytest.raises(OutsideDomain):
        shadow(E(0, 5), strip(1))


class TestEmbedding:
    def test_identity(self):
        i = extend_embedding(identity(), plane())
        assert i(E(R(2, 3), -4)) == E(R(2, 3), -4)

    def test_doubling(self):
        i = extend_embedding(affine(2), plane())
        assert i(E(0, 1)) == E(0, 2)
        assert i.via_shadow(E(0, 1)) == E(0, 2)

    def test_kinked(self):
        f = MonotoneMap(((0, 0), (1, 2)), 1, 1)
        i = extend_embedding(f, plane())
        assert i(E(R(1, 2), R(1, 2))) == E(1, 1)
        assert i.via_shadow(E(R(1, 2), R(1, 2))) == E(1, 1)

    def test_requires_increasing(self):
        with pytest.raises(NotIncreasing):
            extend_embedding(affine(-1), plane())

    def test_outside(self):
        with pytest.raises(OutsideDomain):
            extend_embedding(identity(), strip(1))(E(0, 3))

    @given(pl_maps(Direction.INC), events())
    def test_routes_agree(self, f, p):
        i = extend_embedding(f, plane())
        assert i(p) == i.via_shadow(p)
        assert i.inverse(i(p)) == p

    @given(pl_maps(Direction.INC), events(), events())
    def test_order_iso(self, f, p, q_):
        i = extend_embedding(f, plane())
        assert causally_leq(p, q_) == causally_leq(i(p), i(q_))
        assert chronologically_ll(p, q_) == chronologically_ll(i(p), i(q_))


class TestDomains:
    def test_diagonal_is_enforced(self):
        with pytest.raises(ValueError):
            Domain(lower=PLFunction(((0, 1), (1, 2)), 1, 1))
        with pytest.raises(ValueError):
            Domain(upper=PLFunction(((0, 0), (1, 0)), 0, 0))
        # kinked bounds that stay off the diagonal are accepted
        Domain(lower=PLFunction(((0, -1), (1, 0)), 1, 1), upper=PLFunction(((0, 1), (1, 3)), 1, 2))

    def test_null_square_membership(self):
        d = null_square(-1, 1)
        assert E(0, 0) in d
        assert E(1, 0) not in d and E(0, 1) not in d
        assert E(R(1, 2), R(1, 4)) in d

    def test_image_examples(self):
        assert image_domain(affine(2), strip(1)) == strip(2)
        assert image_domain(MonotoneMap(((0, 0), (1, 2)), 1, 3), plane()) == plane()
        assert image_domain(affine(1, 5), null_square(-1, 1)) == null_square(4, 6)

    @pytest.mark.parametrize("d", domains, ids=["plane", "strip", "diamond"])
    @given(f=pl_maps(Direction.INC), p=events(6))
    @settings(max_examples=60)
    def test_membership_equivariance(self, d, f, p):
        i = extend_embedding(f, d)
        img = image_domain(f, d)
        if p in d:
            assert i(p) in img
        q_ = i.inverse(p)
        assert (q_ in d) == (p in img)


class TestCauchyAxis:
    def test_plane_and_strip(self):
        assert verify_cauchy_axis(plane()).passed
        assert verify_cauchy_axis(strip(1)).passed

    def test_clipped_fails(self):
        d = Domain(-1, 1, PLFunction(((0, -10), (1, -10)), 0, 0), PLFunction(((0, 10), (1, 10)), 0, 0))
        report = verify_cauchy_axis(d, DomainSampler(points=100))
        assert not report.passed
        p, foot = report.failures[0]
        assert p in d and foot not in d


class TestConjugating:
    def test_examples(self):
        assert conjugating_auto(affine(3, 1), affine(3, 1)) == CausalAutomorphism(Kind.PROPER, identity(), identity())
        assert conjugating_auto(identity(), affine(2)) == CausalAutomorphism(Kind.PROPER, affine(2), affine(2))
        assert conjugating_auto(affine(1, 1), affine(1, -1)) == \
            CausalAutomorphism(Kind.PROPER, affine(1, -2), affine(1, -2))

    @given(pl_maps(Direction.INC), pl_maps(Direction.INC), events())
    def test_intertwines(self, f, g, p):
        F = conjugating_auto(f, g)
        assert F(extend_embedding(f, plane())(p)) == extend_embedding(g, plane())(p)

    @given(pl_maps(Direction.INC), pl_maps(Direction.INC), automorphisms(Kind.PROPER), events())
    @settings(max_examples=50)
    def test_conjugates_automorphisms(self, f, g, A, p):
        F = conjugating_auto(f, g)
        B = auto_compose(F, auto_compose(A, auto_invert(F)))
        i_f, i_g = extend_embedding(f, plane()), extend_embedding(g, plane())
        # A acting on i_f(M) corresponds to B acting on i_g(M)
        assert F(A(i_f(p))) == B(i_g(p))


@pytest.mark.parametrize("d", domains + [Domain(-1, 3)], ids=["plane", "strip", "diamond", "band"])
def test_domain_json_round_trip(d):
    assert domain_from_json(domain_to_json(d)) == d
