import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qverify.constant_term import (Z, au_integrand, h_argument, omega_collapse_check, theta_z, theta_z_product,
                                   verify_au_reduction, verify_F_decomposition, verify_H_connection,
                                   z_factors, z_support_bounds, zmono, zq_constant_term, zq_poch)
from qverify.errors import DivergentProduct
from qverify.hypergeom import au_double_sum_spec, sum_eval
from qverify.rings import LaurentPoly
from qverify.series import ProdSpec, QSeries, check_equal, qs_eta_quotient
import oracles


def L(d):
    return LaurentPoly("z", d)


def test_zq_poch_examples():
    f = zq_poch(1, -1, 0, 1, None, 2)
    assert f[0] == L({0: 1, -1: -1})
    assert f[1] == L({-1: -1, -2: 1})
    g = zq_poch(1, 3, 4, 3, None, 7)
    assert g.to_dict() == {0: L({0: 1}), 4: L({3: -1})}
    assert zq_poch(1, 1, 1, 1, 1, 10).to_dict() == {0: L({0: 1}), 1: L({1: -1})}


def test_zq_poch_divergence():
    with pytest.raises(DivergentProduct):
        zq_poch(1, 1, 0, 0, None, 5)
    with pytest.raises(DivergentProduct):
        zq_poch(1, 1, -3, 1, None, 5)


def test_theta_examples():
    t = theta_z(1)
    assert t.to_dict() == {0: L({0: 1, -1: -1})}
    t2 = theta_z(2)
    assert t2[1] == L({1: -1, -2: 1})


@pytest.mark.parametrize("N", [10, 50, 120])
def test_triple_product(N):
    assert check_equal(theta_z(N), theta_z_product(N), N).ok


def test_theta_matches_bilateral_oracle():
    N = 40
    want = oracles.theta_bilateral(N)
    got = theta_z(N)
    for e in range(N):
        assert got[e] == L(want.get(e, {}))


def test_ct_examples():
    f = QSeries.from_dict(Z, {0: L({0: 1, -1: -1}), 1: L({-2: 1, 1: -1})}, 2)
    assert zq_constant_term(f).to_dict() == {0: 1}
    g = QSeries.from_dict(Z, {0: L({0: 2, 3: 1}), 2: L({1: 1})}, 5)
    assert zq_constant_term(g.scale(zmono(1))).is_zero()
    pure = QSeries.from_dict(Z, {0: L({0: 4}), 3: L({0: -1})}, 5)
    assert zq_constant_term(pure).to_dict() == {0: 4, 3: -1}


z_series = st.dictionaries(st.integers(0, 12),
                           st.dictionaries(st.integers(-4, 4), st.integers(-9, 9), max_size=4).map(L),
                           max_size=8).map(lambda d: QSeries.from_dict(Z, d, 13))


@settings(max_examples=100, deadline=None)
@given(z_series, z_series, st.integers(-5, 5))
def test_ct_linear(f, g, c):
    assert zq_constant_term(f + g).to_dict() == (zq_constant_term(f) + zq_constant_term(g)).to_dict()
    assert zq_constant_term(f.scale(Z.coerce(c))).to_dict() == zq_constant_term(f).scale(c).to_dict()


def test_au_integrand_ct_small_order():
    ct = zq_constant_term(au_integrand(7))
    assert [ct[e] for e in range(7)] == [1, 0, 1, 1, 1, 1, 2]
    assert check_equal(ct, sum_eval(au_double_sum_spec(), 7), 7).ok


def test_z_support_within_computed_bounds():
    N = 40
    f = au_integrand(N)
    lo, hi = z_support_bounds(N)
    for e, p in f.items():
        if e >= N or not p:
            continue
        assert lo[e] <= p.mindeg() and p.maxdeg() <= hi[e]
        assert p.mindeg() >= -(e + 1)


def test_omega_collapse():
    assert omega_collapse_check(30).ok


def test_h_connection():
    res = verify_H_connection(60)
    assert res.ok and res.steps["q^0"].ok


def test_f_decomposition():
    res = verify_F_decomposition(40)
    assert res.ok, res.steps


def test_au_reduction():
    res = verify_au_reduction(50)
    assert res.ok, res.steps
    assert res.steps["(i)"].ok and res.steps["(iii)"].ok


def test_mutated_integrand_is_caught():
    # (q^13 z^3; q^9) instead of (q^12 z^3; q^9) must not agree with the huffed series
    N = 60
    bad = qs_eta_quotient(ProdSpec(z_factors([(1, 1, 6, 3, 1), (1, 1, 3, 3, 1), (1, -1, 0, 3, 1),
                                              (1, 3, 13, 9, -1)])), N, Z)
    assert not check_equal(zq_constant_term(bad), h_argument(N).huff(3), N).ok
