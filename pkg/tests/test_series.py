from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qverify.errors import DivergentProduct, NotAUnit, PrecisionError, ZeroFactor
from qverify.rings import OMEGA, QQ, QQw, Eisenstein, LaurentPoly, LaurentPolyRing
from qverify.series import (PochFactor, ProdSpec, QSeries, check_equal, eta_product, first_difference,
                            qs_add, qs_dissect, qs_eta_quotient, qs_huff, qs_inv, qs_mul, qs_neg,
                            qs_pochhammer, qs_scale_exp, qs_subst_omega, theta_phi, theta_psi)
import oracles
from strategies import int_series_dicts


def S(d, N, ring=QQ):
    return QSeries.from_dict(ring, d, N)


# --- arithmetic and bookkeeping ----------------------------------------------

def test_add_examples():
    f = qs_add(S({0: 1, 1: 1}, 10), S({0: -1, 2: 1}, 10))
    assert f.to_dict() == {1: 1, 2: 1} and f.order == 10
    g = S({0: 3, 5: -2}, 10)
    assert qs_add(g, qs_neg(g)).is_zero()
    h = qs_add(S({-1: 1}, 10), S({0: 1}, 10))
    assert h.to_dict() == {-1: 1, 0: 1} and h.min_exp == -1


def test_add_order_is_minimum():
    assert qs_add(S({0: 1}, 7), S({0: 1}, 12)).order == 7


def test_mul_examples():
    N = 20
    geo = S({k: 1 for k in range(N)}, N)
    prod = qs_mul(S({0: 1, 1: -1}, N), geo)
    assert prod.to_dict() == {0: 1}
    assert qs_mul(S({-1: 1}, 10), S({1: 1}, 10)).to_dict() == {0: 1}
    assert qs_mul(S({0: 1, 1: -1}, 10), S({0: 1, 2: -1}, 10)).to_dict() == {0: 1, 1: -1, 2: -1, 3: 1}


def test_mul_order_rule():
    f = S({-2: 1, 0: 3}, 10)
    g = S({1: 1}, 15)
    h = qs_mul(f, g)
    assert h.order == min(10 + 1, 15 - 2)
    assert h.min_exp == -1


def test_inverse_examples():
    N = 15
    assert qs_inv(S({0: 1, 1: -1}, N)).to_dict() == {k: 1 for k in range(N)}
    inv = qs_inv(S({1: 1, 2: -1}, N))
    assert inv.min_exp == -1
    assert inv.to_dict() == {k - 1: 1 for k in range(inv.order + 1) if k - 1 < inv.order}
    A = LaurentPolyRing("a")
    with pytest.raises(NotAUnit):
        qs_inv(QSeries.from_dict(A, {0: LaurentPoly("a", {0: 1, 1: 1})}, 5))


def test_reading_beyond_order_raises():
    f = S({0: 1}, 5)
    with pytest.raises(PrecisionError):
        f[5]
    with pytest.raises(PrecisionError):
        first_difference(f, S({0: 1}, 10), 8)


@settings(max_examples=60, deadline=None)
@given(int_series_dicts(), int_series_dicts())
def test_mul_matches_naive(a, b):
    N = 41
    got = qs_mul(S(a, N), S(b, N))
    assert got.order >= N
    assert got.to_dict() == oracles.mul(a, b, got.order)


@settings(max_examples=40, deadline=None)
@given(int_series_dicts(30, lo=1), int_series_dicts(30), int_series_dicts(30))
def test_mul_associative_commutative(a, b, c):
    N = 31
    a = {0: 1, **a}
    f, g, h = S(a, N), S(b, N), S(c, N)
    assert (f * g).to_dict() == (g * f).to_dict()
    assert ((f * g) * h).to_dict() == (f * (g * h)).to_dict()
    assert (f * qs_inv(f)).truncate(N).to_dict() == {0: 1}


# --- Pochhammer and eta quotients ---------------------------------------------

def test_pochhammer_examples():
    assert qs_pochhammer(1, 1, 1, 2, 20).to_dict() == {0: 1, 1: -1, 2: -1, 3: 1}
    f = qs_pochhammer(1, -1, 3, None, 4)
    assert f.min_exp == -1
    # (1 - q^-1)(1 - q^2)(1 - q^5)... through q^3
    assert f.to_dict() == {-1: -1, 0: 1, 1: 1, 2: -1}
    assert qs_pochhammer(1, 0, 1, 1, 10).is_zero()
    assert qs_pochhammer(1, 0, 1, 0, 10).to_dict() == {0: 1}


def test_pochhammer_errors():
    with pytest.raises(ZeroFactor):
        qs_pochhammer(1, 0, 1, None, 10)
    with pytest.raises(DivergentProduct):
        qs_pochhammer(2, 1, 0, None, 10)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, -1, 2, Fraction(1, 2), -3]), st.integers(-2, 5), st.integers(1, 4))
def test_pochhammer_recurrence(c, j, m):
    N = 40
    prev = qs_pochhammer(c, j, m, 0, N)
    for n in range(30):
        nxt = qs_pochhammer(c, j, m, n + 1, N)
        expect = prev.mul_binomial(1, -c, j + n * m)
        assert check_equal(nxt, expect, min(nxt.order, expect.order)).ok
        prev = nxt


def test_eta_quotient_examples():
    rr = qs_eta_quotient(ProdSpec((PochFactor(1, 1, 5, None, -1), PochFactor(1, 4, 5, None, -1))), 10)
    assert [rr[e] for e in range(10)] == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]
    au = qs_eta_quotient(ProdSpec((PochFactor(1, 2, 6, None, -1), PochFactor(1, 3, 6, None, -1))), 7)
    assert [au[e] for e in range(7)] == [1, 0, 1, 1, 1, 1, 2]
    assert qs_eta_quotient(ProdSpec(()), 5).to_dict() == {0: 1}


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(1, 3)), min_size=1, max_size=4))
def test_partition_oracle(parts):
    N = 60
    spec = ProdSpec(tuple(PochFactor(1, j, m, None, -d) for j, m, d in parts))
    got = qs_eta_quotient(spec, N)
    want = oracles.partition_counts(oracles.colours_of(parts, N), N)
    assert [got[e] for e in range(N)] == want


def test_mixed_eta_quotient_matches_naive():
    parts = [(1, 1, 2), (2, 2, -1), (3, 6, 1), (5, 6, -2)]
    got = eta_product(parts, 50)
    want = oracles.eta_quotient(parts, 50)
    assert got.to_dict() == want


def test_theta_functions():
    N = 120
    assert check_equal(theta_phi(N), eta_product([(1, 1, 2), (2, 2, -1)], N), N).ok
    assert check_equal(theta_psi(N), eta_product([(2, 2, 2), (1, 1, -1)], N), N).ok


# --- huffing, dissection, scaling, omega ----------------------------------------

def test_huff_examples():
    assert qs_huff(S({0: 1, 1: 1, 2: 2, 3: 3, 4: 4}, 5), 3).to_dict() == {0: 1, 3: 3}
    assert qs_huff(S({-1: 1, 3: 1}, 5), 3).to_dict() == {3: 1}
    f = S({0: 2, 1: 5, 7: 1}, 10)
    assert qs_huff(f, 1).to_dict() == f.to_dict()


def test_dissect_examples():
    parts = qs_dissect(S({0: 1, 1: 1, 2: 1, 3: 1}, 4), 2)
    assert [p.to_dict() for p in parts] == [{0: 1, 2: 1}, {1: 1, 3: 1}]
    f = S({0: 1, 4: 2}, 6)
    assert [p.to_dict() for p in qs_dissect(f, 1)] == [f.to_dict()]
    phi = theta_phi(100)
    total = QSeries.zero(QQ, 100)
    for p in qs_dissect(phi, 3):
        total = total + p
    assert total.to_dict() == phi.to_dict()


@settings(max_examples=50, deadline=None)
@given(int_series_dicts(40, lo=-5), st.integers(1, 6))
def test_dissection_complete_and_disjoint(d, m):
    f = S(d, 41)
    parts = qs_dissect(f, m)
    acc = QSeries.zero(QQ, 41)
    for r, p in enumerate(parts):
        assert all(e % m == r for e, _ in p.items())
        acc = acc + p
    assert acc.to_dict() == f.to_dict()


def test_scale_examples():
    g = qs_scale_exp(S({0: 1, 1: 1, 3: 1}, 4), 3)
    assert g.to_dict() == {0: 1, 3: 1, 9: 1} and g.order == 3 * (4 - 1) + 1
    f = S({0: 1, 2: 5}, 6)
    assert qs_scale_exp(f, 1).to_dict() == f.to_dict()
    assert qs_scale_exp(S({-1: 1}, 2), 3).to_dict() == {-3: 1}


def test_subst_omega_examples():
    w = OMEGA
    got = qs_subst_omega(S({0: 1, 1: 1, 2: 1}, 3), 1)
    assert got.ring == QQw
    assert got[0] == 1 and got[1] == w and got[2] == Eisenstein(-1, -1)
    f = S({0: 4, 1: -2}, 5)
    assert qs_subst_omega(f, 0).to_dict() == f.to_dict()
    assert qs_subst_omega(S({0: 1, 3: 1}, 5), 1).to_dict() == {0: 1, 3: 1}


@settings(max_examples=100, deadline=None)
@given(int_series_dicts(99, lo=-3))
def test_huff_omega_identity(d):
    N = 100
    f = S(d, N)
    total = qs_subst_omega(f, 0) + qs_subst_omega(f, 1) + qs_subst_omega(f, 2)
    assert check_equal(total, qs_huff(f, 3).coerce_to(QQw).scale(3), N).ok
