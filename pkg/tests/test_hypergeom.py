import pytest
from hypothesis import given
from hypothesis import strategies as st

from qverify.errors import NonTerminating
from qverify.forms import Form
from qverify.hypergeom import (PhiSpec, SumSpec, TermPoch, a_generalization_sides, asy_product,
                               asy_sum_spec, au_double_sum_spec, bivariate_check_a_generalization,
                               check_ratio, float_1f0_check, phi_eval,
                               s_m_closed_form_check, s_m_eval, s_m_recurrence_check, sum_eval, sum_points)
from qverify.rings import QQ, LaurentPoly
from qverify.series import QSeries, check_equal, eta_product, subst_var
import oracles

n, m = Form.var("n"), Form.var("m")


# --- forms -------------------------------------------------------------------

def test_form_binomial_and_evaluation():
    f = 2 * m.binom2() + 9 * n.binom2() + 3 * m * n + 2 * m + 7 * n
    assert f.evaluate({"m": 3, "n": 2}) == 2 * 3 + 9 * 1 + 18 + 6 + 14
    assert f.is_integer_valued()
    assert not (n / 2).is_integer_valued()
    with pytest.raises(ValueError):
        n * n * n


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_form_substitute_consistent(a, b):
    f = 3 * m * n - m.binom2() + 5 * n + 1
    assert f.substitute({"m": a}).evaluate({"n": b}) == f.evaluate({"m": a, "n": b})


# --- sums ----------------------------------------------------------------------

def rr_spec(lin):
    return SumSpec(("n",), n * n + lin * n, (TermPoch(1, 1, 1, n, -1),))


def test_rr_sum_small_order():
    got = sum_eval(rr_spec(0), 10)
    assert [got[e] for e in range(10)] == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]


def test_rr_sums_match_brute_force():
    N = 80
    for lin in (0, 1):
        got = sum_eval(rr_spec(lin), N)
        want = oracles.brute_sum(lambda k: oracles.rr_term(k, lin, N), 12, N)
        assert got.to_dict() == want


def test_empty_range_sum():
    spec = SumSpec(("n",), 5 * n, ())
    assert sum_eval(spec, 1).to_dict() == {0: 1}


def test_au_conjecture_small_order():
    got = sum_eval(au_double_sum_spec(), 7)
    assert [got[e] for e in range(7)] == [1, 0, 1, 1, 1, 1, 2]


@pytest.mark.parametrize("lin", [(1, 6), (2, 7)])
def test_au_sums_match_brute_force(lin):
    N = 60
    got = sum_eval(au_double_sum_spec(*lin), N)
    want = oracles.brute_sum(lambda a, b: oracles.au_term(a, b, *lin, N), 12, N)
    assert got.to_dict() == want


def test_enumeration_order_irrelevant():
    spec = au_double_sum_spec()
    a = sum_eval(spec, 150, index_order=("m", "n"))
    b = sum_eval(spec, 150, index_order=("n", "m"))
    assert a.to_dict() == b.to_dict()


def test_enumeration_visits_only_needed_points():
    N = 100
    pts = sum_points(au_double_sum_spec(), N)
    f = au_double_sum_spec().q_exp
    # every point with exponent below N is visited
    needed = {(a, b) for a in range(20) for b in range(20) if f.evaluate({"m": a, "n": b}) < N}
    assert needed <= {(p["m"], p["n"]) for p in pts}


def test_negative_cross_term_rejected():
    spec = SumSpec(("m", "n"), m * m + n * n - m * n, ())
    with pytest.raises(NonTerminating):
        sum_eval(spec, 20)


def test_divergent_sum_hits_cap():
    spec = SumSpec(("n",), Form.const(0), ())
    with pytest.raises(NonTerminating):
        sum_eval(spec, 5, cap=50)


def test_asy_rr():
    N = 300
    assert check_equal(sum_eval(asy_sum_spec(), N), asy_product(N), N).ok


# --- phi series --------------------------------------------------------------------

def test_phi_trivial_cases():
    spec = PhiSpec(((1, 1),), ((1, 3),), 1, (1, 1))
    assert phi_eval(spec, 1).to_dict() == {0: 1}
    assert phi_eval(PhiSpec(((1, 1),), (), 1, (0, 0)), 10).to_dict() == {0: 1}


def test_phi_q_binomial_theorem():
    # 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf with a = q^2, z = q
    N = 60
    got = phi_eval(PhiSpec(((1, 2),), (), 1, (1, 1)), N)
    want = eta_product([(3, 1, 1), (1, 1, -1)], N)
    assert check_equal(got, want, N).ok


# --- S_M ---------------------------------------------------------------------------

def test_s_m_values():
    N = 60
    assert s_m_eval(0, N).to_dict() == {0: 1}
    assert s_m_eval(1, N).to_dict() == {0: 1}
    s2 = s_m_eval(2, N)
    want = QSeries.one(QQ, N).mul_binomial(1, -1, 5).mul_binomial(1, -1, 7)
    want = want.div_binomial(1, -1, 3).div_binomial(1, -1, 9)
    assert check_equal(s2, want, N).ok


@pytest.mark.parametrize("M", [1, 2, 3, 7])
def test_s_m_recurrence_and_closed_form(M):
    assert s_m_recurrence_check(M, 120).ok
    assert s_m_closed_form_check(M, 120).ok


def test_s_m_closed_form_at_zero():
    assert s_m_closed_form_check(0, 100).ok


def test_perturbed_ratio_fails():
    M = 3
    res = check_ratio(M, 100, (4 * M - 3, 4 * M), (2 * M - 1, 6 * M - 3))
    assert not res.ok and res.first_diff_exp is not None


def test_terminating_sum_stable_in_order():
    a, b = s_m_eval(4, 80), s_m_eval(4, 160)
    assert check_equal(a, b, 80).ok


# --- a-generalization ----------------------------------------------------------------

def test_a_generalization_low_coefficients():
    lhs, rhs = a_generalization_sides(10)
    assert lhs[0] == 1 and rhs[0] == 1
    assert lhs[1] == LaurentPoly("a", {2: 1, 1: -1}) == rhs[1]


def test_bivariate_check():
    res = bivariate_check_a_generalization(40, D=200)
    assert res.ok, res.steps


def test_degree_bound_is_checked():
    res = bivariate_check_a_generalization(30, D=1, specialize=())
    assert not res.ok and not res.steps["a-degree"].ok


def test_specialization_commutes():
    lhs, _ = a_generalization_sides(60)
    for M in range(4):
        assert check_equal(subst_var(lhs, 2 * M), s_m_eval(M, 60), 60).ok


# --- float check ---------------------------------------------------------------------

def test_float_check():
    assert float_1f0_check(200, 1e-12)
    assert float_1f0_check(1, 0.3)
    assert not float_1f0_check(200, 1e-300)
    assert not float_1f0_check(3, 1e-6)
