"""Single and multi-index q-hypergeometric sums, basic phi series, and the
terminating family S_M with its recurrence and closed form.

A summand is a *hypergeometric term*: a constant, a sign, a power of q given
by a quadratic form in the indices, powers of ring elements (``a^n``,
``omega^n``, ``z^n``), and finite Pochhammer symbols whose lengths are linear
forms in the indices.  ``sum_eval`` enumerates exactly the index points whose
term can reach below the truncation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import NonTerminating
from .forms import Form
from .rings import QQ, LaurentPoly, LaurentPolyRing
from .series import (CheckResult, PochFactor, ProdSpec, QSeries, all_of, check_equal,
                     eta_product, qs_eta_quotient, subst_var)

INDEX_CAP = 10_000


@dataclass(frozen=True)
class TermPoch:
    """(c q^j; q^m)_length ** power inside a summand; length is a linear form."""

    c: Any
    j: int
    m: int
    length: Form
    power: int = 1


@dataclass(frozen=True)
class SumSpec:
    indices: tuple
    q_exp: Form
    pochs: tuple = ()
    sign: Form = Form()
    powers: tuple = ()  # ((ring element, Form), ...) meaning element ** form
    coeff: Any = 1
    lower: tuple = ()

    def lower_bound(self, name: str) -> int:
        if not self.lower:
            return 0
        return self.lower[self.indices.index(name)]


# --- enumeration ------------------------------------------------------------


def _min_quadratic(alpha: Fraction, beta: Fraction, lo: int):
    """min over integers t >= lo of alpha t^2 + beta t, or None if unbounded."""
    if alpha < 0 or (alpha == 0 and beta < 0):
        return None
    if alpha == 0:
        return beta * lo
    v = -beta / (2 * alpha)
    cands = {max(lo, math.floor(v)), max(lo, math.ceil(v))}
    return min(alpha * t * t + beta * t for t in cands)


class _Enumerator:
    """Index points of a SumSpec whose term may contribute below q^N."""

    def __init__(self, spec: SumSpec, N: int, index_order=None, cap: int = INDEX_CAP):
        self.spec = spec
        self.N = N
        self.cap = cap
        self.order = tuple(index_order) if index_order else spec.indices
        if sorted(self.order) != sorted(spec.indices):
            raise ValueError("index_order must permute the summation indices")
        idx = spec.indices
        for i, a in enumerate(idx):
            if spec.lower_bound(a) < 0:
                raise ValueError("summation indices must start at a nonnegative value")
            for b in idx[i + 1:]:
                if spec.q_exp.coeff(a, b) < 0:
                    raise NonTerminating(
                        f"negative cross term {a}*{b} in the q-exponent; enumeration needs "
                        "nonnegative cross terms")
        # most negative valuation the numerator Pochhammers can contribute
        self.poch_floor = 0
        for p in spec.pochs:
            if p.power > 0 and p.c and p.m > 0:
                k = 0
                while p.j + k * p.m < 0:
                    self.poch_floor += p.power * (p.j + k * p.m)
                    k += 1
            elif p.power > 0 and p.c and p.m <= 0 and p.j < 0:
                raise NonTerminating("numerator Pochhammer with non-increasing exponents")
        self.vanishing = []  # (length form, k0): term is 0 once length > k0
        for p in spec.pochs:
            if p.power > 0 and p.c == 1 and p.m != 0 and (-p.j) % p.m == 0 and -p.j // p.m >= 0:
                self.vanishing.append((p.length, -p.j // p.m))
            elif p.power > 0 and p.c == 1 and p.m == 0 and p.j == 0:
                self.vanishing.append((p.length, 0))

    def _lb(self, env: dict):
        """Lower bound on the q-valuation over all completions of ``env``; inf if all vanish."""
        free = [n for n in self.order if n not in env]
        lows = {n: self.spec.lower_bound(n) for n in free}
        for length, k0 in self.vanishing:
            part = length.substitute(env)
            if all(part.coeff(n) >= 0 for n in free):
                least = part.substitute(lows).constant()
                if least > k0:
                    return math.inf
        rest = self.spec.q_exp.substitute(env)
        total = rest.substitute(lows).constant() - sum(
            (rest.coeff(n, n) * lows[n] ** 2 + rest.coeff(n) * lows[n]) for n in free)
        # cross terms among free variables are >= 0 on the cone; drop them
        for n in free:
            alpha, beta = rest.coeff(n, n), rest.coeff(n)
            m = _min_quadratic(alpha, beta, lows[n])
            if m is None:
                return -math.inf
            total += m
        return total + self.poch_floor

    def _ramp_done(self, env: dict, name: str, t: int) -> bool:
        """True once the bound is nondecreasing in ``name`` from t on."""
        rest = self.spec.q_exp.substitute(env)
        alpha, beta = rest.coeff(name, name), rest.coeff(name)
        if alpha > 0:
            return t >= -beta / (2 * alpha)
        return alpha == 0 and beta > 0

    def points(self):
        yield from self._walk(0, {})

    def _walk(self, depth: int, env: dict):
        if depth == len(self.order):
            yield dict(env)
            return
        name = self.order[depth]
        t = self.spec.lower_bound(name)
        steps = 0
        while True:
            env[name] = t
            lb = self._lb(env)
            done = self._ramp_done({k: v for k, v in env.items() if k != name}, name, t)
            if lb >= self.N:
                if lb == math.inf:
                    if self._vanishing_persists(env, name):
                        break
                elif done:
                    break
            else:
                yield from self._walk(depth + 1, env)
            t += 1
            steps += 1
            if steps > self.cap:
                del env[name]
                raise NonTerminating(
                    f"index {name} exceeded the cap {self.cap} without leaving the window q^<{self.N}")
        del env[name]

    def _vanishing_persists(self, env, name) -> bool:
        for length, k0 in self.vanishing:
            part = length.substitute({k: v for k, v in env.items() if k != name})
            if part.coeff(name) >= 0 and all(part.coeff(n) >= 0 for n in self.order if n not in env):
                free = {n: self.spec.lower_bound(n) for n in self.order if n not in env}
                if part.substitute({name: env[name], **free}).constant() > k0:
                    return True
        return False


# --- evaluation -------------------------------------------------------------


def term_value(spec: SumSpec, env: dict, N: int, ring) -> QSeries:
    """One summand at the index point ``env``, exact below q^N."""
    E = spec.q_exp.evaluate(env)
    scalar = ring.coerce(spec.coeff)
    if spec.sign.evaluate(env) % 2:
        scalar = -scalar
    for base, form in spec.powers:
        k = form.evaluate(env)
        b = ring.coerce(base)
        scalar = scalar * (b ** k if k >= 0 else ring.inv(b) ** (-k))
    factors = []
    for p in spec.pochs:
        n = p.length.evaluate(env)
        if n < 0:
            raise ValueError(f"Pochhammer length {p.length} is negative at {env}")
        if n:
            factors.append(PochFactor(p.c, p.j, p.m, n, p.power))
    body = qs_eta_quotient(ProdSpec(tuple(factors)), N - E, ring)
    return body.scale(scalar).shift(E)


def sum_eval(spec: SumSpec, N: int, ring=QQ, index_order=None, cap: int = INDEX_CAP) -> QSeries:
    """Exact value of the sum below q^N."""
    acc: dict = {}
    for env in _Enumerator(spec, N, index_order, cap).points():
        term = term_value(spec, env, N, ring)
        for e, c in term.items():
            if e < N:
                v = acc.get(e)
                acc[e] = c if v is None else v + c
    return QSeries.from_dict(ring, acc, N)


def sum_points(spec: SumSpec, N: int, index_order=None) -> list[dict]:
    return list(_Enumerator(spec, N, index_order).points())


# --- basic hypergeometric series --------------------------------------------


@dataclass(frozen=True)
class PhiSpec:
    """r phi s (upper; lower; q^m, arg) with the (-1)^n q^(m C(n,2)) ** (1+s-r) factor.

    Parameters and the argument are monomials ``(c, j)`` standing for c q^j.
    """

    upper: tuple
    lower: tuple
    m: int
    arg: tuple

    def to_sum(self) -> SumSpec:
        n = Form.var("n")
        r, s = len(self.upper), len(self.lower)
        extra = 1 + s - r
        pochs = [TermPoch(c, j, self.m, n, 1) for c, j in self.upper if c]
        pochs += [TermPoch(c, j, self.m, n, -1) for c, j in self.lower]
        pochs.append(TermPoch(1, self.m, self.m, n, -1))
        c_arg, j_arg = self.arg
        q_exp = extra * self.m * n.binom2() + j_arg * n
        powers = ((c_arg, n),) if c_arg != 1 else ()
        return SumSpec(("n",), q_exp, tuple(pochs), sign=extra * n, powers=powers)


def phi_eval(spec: PhiSpec, N: int, ring=QQ) -> QSeries:
    if not spec.arg[0]:
        return QSeries.one(ring, N)
    return sum_eval(spec.to_sum(), N, ring)


# --- the terminating family S_M ---------------------------------------------


def s_m_spec(M: int) -> SumSpec:
    """S_M = sum_n (q^2M;q)_n (q^(2-2M);q^2)_n / ((q^(4M+1);q^2)_n (q^3;q^3)_n) (-1)^n q^(C(n,2)+n+2Mn)."""
    n = Form.var("n")
    pochs = (
        TermPoch(1, 2 * M, 1, n, 1),
        TermPoch(1, 2 - 2 * M, 2, n, 1),
        TermPoch(1, 4 * M + 1, 2, n, -1),
        TermPoch(1, 3, 3, n, -1),
    )
    return SumSpec(("n",), n.binom2() + n + 2 * M * n, pochs, sign=n)


def s_m_eval(M: int, N: int) -> QSeries:
    if M < 0:
        raise ValueError("M must be nonnegative")
    return sum_eval(s_m_spec(M), N)


def _binomials(f: QSeries, exps, divide=False) -> QSeries:
    for e in exps:
        f = f.div_binomial(1, -1, e) if divide else f.mul_binomial(1, -1, e)
    return f


def check_ratio(M: int, N: int, num_exps, den_exps) -> CheckResult:
    """S_M * prod(1 - q^d) == S_(M-1) * prod(1 - q^u) through q^(N-1)."""
    lhs = _binomials(s_m_eval(M, N), den_exps)
    rhs = _binomials(s_m_eval(M - 1, N), num_exps)
    return check_equal(lhs, rhs, N, f"S_{M} ratio")


def s_m_recurrence_check(M: int, N: int) -> CheckResult:
    """The simplified ratio and the raw creative-telescoping output, both cross-multiplied."""
    if M < 1:
        raise ValueError("the recurrence needs M >= 1")
    steps = {"simplified": check_ratio(M, N, (4 * M - 3, 4 * M - 1), (2 * M - 1, 6 * M - 3))}
    # SUM[M] (1-q^(2M-1))^2 (q^2 + q^4M + q^(2M+1)) == q^2 (1-q^(4M-3)) (1-q^(4M-1)) SUM[M-1]
    sm, sm1 = s_m_eval(M, N + 2), s_m_eval(M - 1, N + 2)
    lhs = _binomials(sm, (2 * M - 1, 2 * M - 1))
    lhs = lhs.shift(2) + lhs.shift(4 * M) + lhs.shift(2 * M + 1)
    rhs = _binomials(sm1, (4 * M - 3, 4 * M - 1)).shift(2)
    steps["raw"] = check_equal(lhs, rhs, N, f"S_{M} raw recurrence")
    return all_of(f"S_{M} recurrence", N, steps)


def s_m_closed_form(M: int, N: int) -> QSeries:
    return eta_product([(2 * M + 1, 2, 1), (6 * M + 3, 6, 1), (4 * M + 1, 2, -1), (3, 6, -1)], N)


def s_m_closed_form_check(M: int, N: int) -> CheckResult:
    sm = s_m_eval(M, N)
    finite = qs_eta_quotient(ProdSpec((PochFactor(1, 1, 2, 2 * M, 1), PochFactor(1, 1, 2, M, -1),
                                       PochFactor(1, 3, 6, M, -1))), N)
    steps = {
        "infinite": check_equal(sm, s_m_closed_form(M, N), N, f"S_{M} infinite form"),
        "finite": check_equal(sm, finite, N, f"S_{M} finite form"),
    }
    return all_of(f"S_{M} closed form", N, steps)


# --- the a-generalisation ---------------------------------------------------

POLY_A = LaurentPolyRing("a")


def _a(k: int) -> LaurentPoly:
    return POLY_A.gen(k)


def a_generalization_lhs_spec() -> SumSpec:
    n = Form.var("n")
    pochs = (
        TermPoch(_a(1), 0, 1, n, 1),     # (a; q)_n
        TermPoch(_a(-1), 2, 2, n, 1),    # (a^-1 q^2; q^2)_n
        TermPoch(_a(2), 1, 2, n, -1),    # (a^2 q; q^2)_n
        TermPoch(1, 3, 3, n, -1),        # (q^3; q^3)_n
    )
    return SumSpec(("n",), n.binom2() + n, pochs, sign=n, powers=((_a(1), n),))


def a_generalization_sides(N: int) -> tuple[QSeries, QSeries]:
    lhs = sum_eval(a_generalization_lhs_spec(), N, POLY_A)
    rhs = qs_eta_quotient(ProdSpec((
        PochFactor(_a(1), 1, 2, None, 1),
        PochFactor(_a(3), 3, 6, None, 1),
        PochFactor(_a(2), 1, 2, None, -1),
        PochFactor(1, 3, 6, None, -1),
    )), N, POLY_A)
    return lhs, rhs


def max_a_degree(f: QSeries) -> int:
    return max((p.maxdeg() for _, p in f.items()), default=0)


def check_a_expansion(n_max: int, N: int) -> CheckResult:
    """(a^-1 q^2; q^2)_n a^n == prod_{k=1..n} (a - q^2k) for n <= n_max."""
    for n in range(n_max + 1):
        lhs = qs_eta_quotient(ProdSpec((PochFactor(_a(-1), 2, 2, n, 1),)), N, POLY_A).scale(_a(n))
        rhs = QSeries.one(POLY_A, N)
        for k in range(1, n + 1):
            rhs = rhs.mul_binomial(_a(1), -1, 2 * k)
        res = check_equal(lhs, rhs, N, f"a-expansion n={n}")
        if not res:
            return res
    return CheckResult(True, N, "a-expansion")


def bivariate_check_a_generalization(N: int, D: int | None = None, specialize=range(7)) -> CheckResult:
    """Both sides over Laurent polynomials in a, compared at every a-degree below q^N.

    ``D`` bounds the a-degree; no a-truncation is ever applied, so it is
    checked after the fact.  ``specialize`` lists the M for which a = q^(2M)
    is substituted into the computed left side and compared with S_M.
    """
    lhs, rhs = a_generalization_sides(N)
    steps = {"bivariate": check_equal(lhs, rhs, N, "a-generalization")}
    degree = max(max_a_degree(lhs), max_a_degree(rhs))
    steps["a-degree"] = CheckResult(D is None or degree <= D, N, f"a-degree {degree} <= {D}")
    steps["a-expansion"] = check_a_expansion(min(8, N), min(N, 40))
    for M in specialize:
        steps[f"a=q^{2 * M}"] = check_equal(subst_var(lhs, 2 * M), s_m_eval(M, N), N, f"S_{M}")
    result = all_of("a-generalization", N, steps)
    result.steps["a-degree"].lhs_coeff = degree
    return result


# --- the q -> 1 limit -------------------------------------------------------


def one_f_zero_partial(terms: int) -> float:
    """sum_{n<terms} (1/3)_n / n! * (-1/3)^n in floating point."""
    total, t = 0.0, 1.0
    for n in range(terms):
        total += t
        t *= (1.0 / 3.0 + n) / (n + 1) * (-1.0 / 3.0)
    return total


def float_1f0_check(terms: int, tol: float) -> bool:
    """Partial sum within ``tol`` of (3/4)^(1/3).

    A tolerance finer than one ulp of the target cannot be certified in
    double precision and is rejected.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    target = 0.75 ** (1.0 / 3.0)
    if tol < math.ulp(target):
        return False
    return abs(one_f_zero_partial(terms) - target) < tol


# --- named summands used across the package ---------------------------------


def asy_sum_spec() -> SumSpec:
    """sum_n (-1)^n q^(3C(n,2)+4n) (q;q^3)_n / (q^9;q^9)_n."""
    n = Form.var("n")
    return SumSpec(("n",), 3 * n.binom2() + 4 * n,
                   (TermPoch(1, 1, 3, n, 1), TermPoch(1, 9, 9, n, -1)), sign=n)


def asy_product(N: int) -> QSeries:
    return eta_product([(4, 6, 1), (12, 18, 1), (5, 6, -1), (9, 18, -1)], N)


def au_double_sum_spec(lin_m: int = 2, lin_n: int = 7) -> SumSpec:
    """sum_{m,n} (-1)^n q^(2C(m,2)+9C(n,2)+3mn+lin_m*m+lin_n*n) / ((q;q)_m (q^3;q^3)_n).

    (2, 7) is the conjectured identity, (1, 6) the companion theorem.
    """
    m, n = Form.var("m"), Form.var("n")
    q_exp = 2 * m.binom2() + 9 * n.binom2() + 3 * m * n + lin_m * m + lin_n * n
    return SumSpec(("m", "n"), q_exp, (TermPoch(1, 1, 1, m, -1), TermPoch(1, 3, 3, n, -1)), sign=n)
