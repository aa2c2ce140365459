"""Series in q with Laurent-polynomial coefficients in z, and their constant terms.

A contour integral  (1/2 pi i) \\oint f(z) dz / z  around a contour separating 0
from the other poles is the z^0 coefficient of f, so every integral here is
computed as ``zq_constant_term``.  Nothing is integrated numerically.
"""
from __future__ import annotations

from .errors import DivergentProduct
from .hypergeom import TermPoch, SumSpec, asy_sum_spec, au_double_sum_spec, phi_eval, PhiSpec, sum_eval
from .forms import Form
from .rings import QQ, QQw, LaurentPoly, LaurentPolyRing, eis_root_power
from .series import (CheckResult, PochFactor, ProdSpec, QSeries, all_of, check_equal, eta_product,
                     qs_eta_quotient)

# working-order padding for expressions carrying q^-1 factors
PAD = 8

Z = LaurentPolyRing("z", QQ)
Zw = LaurentPolyRing("z", QQw)


def z_ring(base=QQ) -> LaurentPolyRing:
    return Zw if base == QQw else Z


def zmono(d: int, c=1, base=QQ) -> LaurentPoly:
    return z_ring(base).gen(d, c)


def zq_poch(c, d: int, j: int, m: int, n, N: int, base=QQ) -> QSeries:
    """prod_{k<n} (1 - c z^d q^(j+km)), exact below q^N; n=None is infinite."""
    if n is None:
        if m < 1:
            raise DivergentProduct(f"infinite z-product with step q^{m}")
        nonpos = sum(1 for k in range(max(0, -j // m) + 1) if j + k * m <= 0)
        if nonpos > 1:
            raise DivergentProduct("more than one factor at nonpositive q-exponent")
    ring = z_ring(base)
    return qs_eta_quotient(ProdSpec((PochFactor(zmono(d, c, base), j, m, n, 1),)), N, ring)


def z_factors(parts, base=QQ) -> tuple:
    """PochFactors from (c, d, j, m, power) tuples meaning (c z^d q^j; q^m)_inf ** power."""
    return tuple(PochFactor(zmono(d, c, base), j, m, None, p) for c, d, j, m, p in parts)


def theta_z(N: int, base=QQ) -> QSeries:
    """sum over integers l of (-1)^l q^C(l,2) z^-l, truncated below q^N."""
    acc: dict = {}
    l = 0
    while l * (l - 1) // 2 < N:
        for t in {l, 1 - l}:  # C(l,2) == C(1-l,2)
            e = t * (t - 1) // 2
            acc.setdefault(e, {})[-t] = (-1) ** (t % 2)
        l += 1
    ring = z_ring(base)
    return QSeries.from_dict(ring, {e: LaurentPoly("z", d) for e, d in acc.items()}, N)


def theta_z_product(N: int, base=QQ) -> QSeries:
    """(q, qz, 1/z; q)_inf, the product side of the triple product."""
    ring = z_ring(base)
    seed = qs_eta_quotient(ProdSpec(z_factors([(1, 0, 1, 1, 1), (1, 1, 1, 1, 1), (1, -1, 0, 1, 1)], base)),
                           N, ring)
    return seed


def zq_constant_term(f: QSeries) -> QSeries:
    if not isinstance(f.ring, LaurentPolyRing):
        raise TypeError("constant term needs Laurent-polynomial coefficients")
    base = f.ring.base
    return f.map_coeffs(lambda p: base.coerce(p.coeff(0)), base)


def z_coefficient(f: QSeries, d: int) -> QSeries:
    base = f.ring.base
    return f.map_coeffs(lambda p: base.coerce(p.coeff(d)), base)


# --- the integrands ---------------------------------------------------------


def h_integrand(N: int) -> QSeries:
    """(q^6 z, q^3 z, 1/z; q^3)_inf / (q^12 z^3; q^9)_inf over Q."""
    return qs_eta_quotient(ProdSpec(z_factors([
        (1, 1, 6, 3, 1), (1, 1, 3, 3, 1), (1, -1, 0, 3, 1), (1, 3, 12, 9, -1)])), N, Z)


def h_integrand_omega(N: int) -> QSeries:
    """The same integrand with the uncollapsed denominator prod_j (omega^j q^4 z; q^3)_inf."""
    parts = [(1, 1, 6, 3, 1), (1, 1, 3, 3, 1), (1, -1, 0, 3, 1)]
    parts += [(eis_root_power(k), 1, 4, 3, -1) for k in range(3)]
    return qs_eta_quotient(ProdSpec(z_factors(parts, QQw)), N, Zw)


def omega_collapse_check(N: int) -> CheckResult:
    """(x, omega x, omega^2 x; q^3)_inf == (x^3; q^9)_inf at x = q^4 z, over Q(omega)."""
    lhs = qs_eta_quotient(ProdSpec(z_factors([(eis_root_power(k), 1, 4, 3, 1) for k in range(3)], QQw)), N, Zw)
    rhs = qs_eta_quotient(ProdSpec(z_factors([(1, 3, 12, 9, 1)])), N, Z).coerce_to(Zw)
    return check_equal(lhs, rhs.map_coeffs(_lift_z, Zw), N, "omega collapse")


def _lift_z(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly("z", {e: QQw.coerce(c) for e, c in p.terms.items()})


def au_integrand(N: int) -> QSeries:
    """(q^2 z; q)_inf (q, qz, 1/z; q)_inf / (q^4 z^3; q^3)_inf, with the triple product as a bilateral sum."""
    theta = theta_z(N + PAD)
    return qs_eta_quotient(ProdSpec(z_factors([(1, 1, 2, 1, 1), (1, 3, 4, 3, -1)])), N, Z, seed=theta)


def au_integrand_reduced(N: int) -> QSeries:
    """(q^2 z, q z, 1/z; q)_inf / (q^4 z^3; q^3)_inf: the integrand with (q;q)_inf pulled out."""
    return qs_eta_quotient(ProdSpec(z_factors([
        (1, 1, 2, 1, 1), (1, 1, 1, 1, 1), (1, -1, 0, 1, 1), (1, 3, 4, 3, -1)])), N, Z)


# --- series on the right of the H-connection --------------------------------


def h_argument(N: int) -> QSeries:
    """(q^4, q^2, q^-1; q^3)_inf / (q^9; q^9)_inf * sum_n (-1)^n q^(3C(n,2)+4n) (q;q^3)_n/(q^9;q^9)_n."""
    s = sum_eval(asy_sum_spec(), N + PAD)
    out = qs_eta_quotient(ProdSpec((PochFactor(1, 4, 3), PochFactor(1, 2, 3), PochFactor(1, -1, 3),
                                    PochFactor(1, 9, 9, None, -1))), N, QQ, seed=s)
    return out


def f_series(N: int) -> QSeries:
    """F(q) in its single-sum form: one third of ``h_argument``."""
    from fractions import Fraction
    return h_argument(N).scale(Fraction(1, 3))


def f_series_phi(N: int, k: int = 0) -> QSeries:
    """F(omega^k q) from its 2phi2 form, over Q(omega).

    (w^k q^4, w^2k q^2, w^2k q^-1; q^3)_inf / (q^3, w, w^2; q^3)_inf
      * 2phi2(0, w^k q; w q^3, w^2 q^3; q^3, w^k q^4)
    """
    w = eis_root_power
    phi = PhiSpec(upper=((0, 0), (w(k), 1)), lower=((w(1), 3), (w(2), 3)), m=3, arg=(w(k), 4))
    s = phi_eval(phi, N + PAD, QQw)
    prefactor = ProdSpec((
        PochFactor(w(k), 4, 3), PochFactor(w(2 * k), 2, 3), PochFactor(w(2 * k), -1, 3),
        PochFactor(1, 3, 3, None, -1), PochFactor(w(1), 0, 3, None, -1), PochFactor(w(2), 0, 3, None, -1),
    ))
    return qs_eta_quotient(prefactor, N, QQw, seed=s)


# --- verifications ----------------------------------------------------------


def verify_H_connection(N: int) -> CheckResult:
    lhs = zq_constant_term(h_integrand(N + PAD))
    rhs = h_argument(N + PAD).huff(3)
    steps = {
        "ct=huff": check_equal(lhs, rhs, N, "H-connection"),
        "collapse": omega_collapse_check(min(N, 60)),
        "q^0": check_equal(lhs.truncate(1), rhs.truncate(1), 1, "constant terms"),
    }
    return all_of("H-connection", N, steps)


def verify_F_decomposition(N: int) -> CheckResult:
    F = f_series(N + PAD)
    total = F.subst_omega(0) + F.subst_omega(1) + F.subst_omega(2)
    huffed = F.huff(3).scale(3).coerce_to(QQw)
    steps = {"sum=3H": check_equal(total, huffed, N, "F(q)+F(wq)+F(w^2q) = 3H(F)")}
    steps["omega-free"] = CheckResult(all(c.om == 0 for _, c in total.truncate(N).items()), N, "omega-free")
    for k in range(3):
        steps[f"phi-form k={k}"] = check_equal(f_series_phi(N, k), F.subst_omega(k), N, f"F(w^{k} q)")
    ct = zq_constant_term(h_integrand(N + PAD)).coerce_to(QQw)
    steps["ct"] = check_equal(total, ct, N, "sum = CT")
    ct_w = zq_constant_term(h_integrand_omega(N + PAD))
    steps["ct-omega"] = check_equal(total, ct_w, N, "sum = CT with omega denominators")
    return all_of("F decomposition", N, steps)


def euler_z_spec() -> SumSpec:
    """sum_m (-1)^m q^(C(m,2)+2m) z^m / (q;q)_m  =  (q^2 z; q)_inf."""
    m = Form.var("m")
    return SumSpec(("m",), m.binom2() + 2 * m, (TermPoch(1, 1, 1, m, -1),), sign=m,
                   powers=((zmono(1), m),))


def cubic_z_spec() -> SumSpec:
    """sum_n q^(4n) z^(3n) / (q^3;q^3)_n  =  1 / (q^4 z^3; q^3)_inf."""
    n = Form.var("n")
    return SumSpec(("n",), 4 * n, (TermPoch(1, 3, 3, n, -1),), powers=((zmono(3), n),))


def verify_au_reduction(N: int) -> CheckResult:
    """The constant-term route to the double sum, at integer exponents throughout.

    (i)   double sum == CT of the triple-product integrand
    (ii)  that CT, with q -> q^3, == (q^3;q^3)_inf * CT of the H-connection integrand
    (iii) with the H-calculation, double sum == 1/(q^2, q^3; q^6)_inf
    """
    steps = {}
    W = N + PAD
    steps["euler"] = check_equal(sum_eval(euler_z_spec(), W, Z), zq_poch(1, 1, 2, 1, None, W), N,
                                 "Euler expansion")
    steps["cubic"] = check_equal(sum_eval(cubic_z_spec(), W, Z),
                                 qs_eta_quotient(ProdSpec(z_factors([(1, 3, 4, 3, -1)])), W, Z), N,
                                 "geometric expansion")
    steps["jtp"] = check_equal(theta_z(W), theta_z_product(W), N, "triple product")

    dsum = sum_eval(au_double_sum_spec(), W)
    ct = zq_constant_term(au_integrand(W))
    steps["(i)"] = check_equal(dsum, ct, N, "double sum = CT")

    N3 = 3 * (N - 1) + 1
    poch_q = eta_product([(1, 1, 1)], W)
    steps["(ii)-factor"] = check_equal(ct, poch_q * zq_constant_term(au_integrand_reduced(W)), N,
                                       "(q;q)_inf pulled out")
    lhs = ct.scale_exp(3)
    rhs = poch_q.scale_exp(3) * zq_constant_term(h_integrand(N3 + PAD))
    steps["(ii)"] = check_equal(lhs, rhs, N3, "scaled CT = (q^3;q^3) * H-connection CT")

    h_calc = eta_product([(3, 3, -1), (6, 18, -1), (9, 18, -1)], N3 + PAD)
    steps["(iii)-scaled"] = check_equal(dsum.scale_exp(3), poch_q.scale_exp(3) * h_calc, N3,
                                        "scaled assembly")
    steps["(iii)"] = check_equal(dsum, eta_product([(2, 6, -1), (3, 6, -1)], W), N, "final product")
    return all_of("AU reduction", N, steps)


# --- z-support bookkeeping --------------------------------------------------


def z_support_bounds(N: int):
    """Min and max z-degree reachable at each q-exponent of ``au_integrand``.

    Computed by min/max-plus dynamic programming over the monomials each factor
    can contribute, independently of the series arithmetic.  Returns two lists
    indexed by exponent (None where no monomial lands).
    """
    INF = float("inf")
    lo = [INF] * N
    hi = [-INF] * N
    # bilateral theta: z^-l q^C(l,2)
    l = 0
    while l * (l - 1) // 2 < N:
        for t in {l, 1 - l}:
            e = t * (t - 1) // 2
            lo[e] = min(lo[e], -t)
            hi[e] = max(hi[e], -t)
        l += 1

    def absorb(choices):
        # choices: list of (q-exp, z-deg) options for one factor, the empty choice is implicit
        nonlocal lo, hi
        nlo, nhi = lo[:], hi[:]
        for e in range(N):
            if lo[e] == INF:
                continue
            for de, dz in choices:
                t = e + de
                if t >= N:
                    continue
                nlo[t] = min(nlo[t], lo[e] + dz)
                nhi[t] = max(nhi[t], hi[e] + dz)
        lo, hi = nlo, nhi

    k = 0
    while 2 + k < N:  # (q^2 z; q)_inf: each factor contributes 1 or z q^(2+k)
        absorb([(2 + k, 1)])
        k += 1
    k = 0
    while 4 + 3 * k < N:  # 1/(q^4 z^3; q^3)_inf: any power of z^3 q^(4+3k)
        e = 4 + 3 * k
        absorb([(j * e, 3 * j) for j in range(1, (N - 1) // e + 1)])
        k += 1
    return ([None if v == INF else int(v) for v in lo], [None if v == -INF else int(v) for v in hi])
