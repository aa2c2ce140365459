from fractions import Fraction

import pytest
from hypothesis import given, settings

from qverify.errors import NotAUnit
from qverify.rings import (OMEGA, QQ, QQw, Eisenstein, LaurentPoly, LaurentPolyRing, eis_root_power,
                           ring_add, ring_inv, ring_mul, ring_neg)
from oracles import eisenstein_norm
from strategies import RINGS, eisenstein, laurent, rationals


def test_rational_examples():
    assert ring_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert ring_inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.coerce(Fraction(4, 2)) == 2 and type(QQ.coerce(Fraction(4, 2))) is int


def test_eisenstein_examples():
    w = OMEGA
    assert w * w == Eisenstein(-1, -1)
    assert w * (w * w) == 1
    assert 1 + w + w * w == 0
    assert (1 - w) * (1 - w * w) == 3
    assert (1 - w).inv() == Eisenstein(Fraction(2, 3), Fraction(1, 3))
    assert eis_root_power(0) == 1
    assert eis_root_power(2) == Eisenstein(-1, -1)
    assert eis_root_power(-1) == Eisenstein(-1, -1)
    assert w ** 3 == 1 and w ** -1 == w * w


def test_laurent_inverse_rules():
    A = LaurentPolyRing("a")
    with pytest.raises(NotAUnit):
        ring_inv(LaurentPoly("a", {0: 1, 1: 1}))
    x = A.gen(-3, Fraction(2, 5))
    assert x * ring_inv(x) == A.one
    with pytest.raises(NotAUnit):
        QQ.inv(0)
    with pytest.raises(NotAUnit):
        QQw.inv(Eisenstein(0, 0))


def test_str_of_eisenstein_uses_w():
    assert "w" in str(OMEGA) and str(Eisenstein(3, 0)) == "3"


@pytest.mark.parametrize("name", sorted(RINGS))
def test_ring_axioms(name):
    ring, elems = RINGS[name]

    @settings(max_examples=300, deadline=None)
    @given(elems, elems, elems)
    def check(x, y, z):
        assert ring_add(x, y) == ring_add(y, x)
        assert ring_mul(x, y) == ring_mul(y, x)
        assert ring_add(ring_add(x, y), z) == ring_add(x, ring_add(y, z))
        assert ring_mul(ring_mul(x, y), z) == ring_mul(x, ring_mul(y, z))
        assert ring_mul(x, ring_add(y, z)) == ring_add(ring_mul(x, y), ring_mul(x, z))
        assert ring_add(x, ring_neg(x)) == ring.zero
        assert ring_mul(x, ring.one) == x

    check()


@settings(max_examples=500, deadline=None)
@given(eisenstein, eisenstein)
def test_eisenstein_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() == eisenstein_norm(x.re, x.om)


@settings(max_examples=300, deadline=None)
@given(eisenstein)
def test_eisenstein_inverse(x):
    if x:
        assert x * x.inv() == 1
        assert x * x.conj() == x.norm()


@settings(max_examples=300, deadline=None)
@given(laurent("a"), laurent("a"))
def test_laurent_degree_bounds(f, g):
    if f and g:
        h = f * g
        assert h.mindeg() == f.mindeg() + g.mindeg()
        assert h.maxdeg() == f.maxdeg() + g.maxdeg()


@given(rationals)
def test_eisenstein_embeds_rationals(r):
    assert QQw.coerce(r) == r
    assert QQ.coerce(QQw.coerce(r)) == r


def test_zero_coefficients_not_stored():
    p = LaurentPoly("z", {1: 1, 2: 0}) + LaurentPoly("z", {1: -1})
    assert p.terms == {} and not p


def test_values_are_immutable():
    with pytest.raises(AttributeError):
        OMEGA.re = 5
    with pytest.raises(AttributeError):
        LaurentPoly("a", {1: 1}).terms = {}
