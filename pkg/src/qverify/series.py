"""Truncated Laurent series in q over an exact coefficient ring.

A ``QSeries`` stores coefficients densely from ``start`` (its valuation; leading
zeros are stripped) up to ``order`` (exclusive).  Every coefficient with
exponent below ``order`` is exact; nothing is claimed at or above it.  All
arithmetic propagates the guaranteed order, so precision lost to negative
powers of q shows up as a smaller ``order`` instead of silently wrong digits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import DivergentProduct, NotAUnit, PrecisionError, ZeroFactor
from .rings import QQ, QQw, LaurentPoly, LaurentPolyRing, eis_root_power, ring_of


class QSeries:
    __slots__ = ("ring", "start", "order", "coeffs")

    def __init__(self, ring, coeffs: Sequence, start: int, order: int):
        coeffs = list(coeffs)
        if len(coeffs) != max(0, order - start):
            raise ValueError(f"expected {order - start} coefficients, got {len(coeffs)}")
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        self.ring = ring
        self.coeffs = coeffs[lead:]
        self.start = start + lead if self.coeffs else order
        self.order = order

    # --- construction ---------------------------------------------------

    @classmethod
    def zero(cls, ring, order: int) -> QSeries:
        return cls(ring, [], order, order)

    @classmethod
    def one(cls, ring, order: int) -> QSeries:
        return cls.monomial(ring, ring.one, 0, order)

    @classmethod
    def monomial(cls, ring, c, e: int, order: int) -> QSeries:
        if e >= order or not c:
            return cls.zero(ring, order)
        out = [ring.zero] * (order - e)
        out[0] = ring.coerce(c)
        return cls(ring, out, e, order)

    @classmethod
    def from_dict(cls, ring, terms: dict, order: int) -> QSeries:
        terms = {e: c for e, c in terms.items() if e < order and c}
        if not terms:
            return cls.zero(ring, order)
        lo = min(terms)
        out = [ring.zero] * (order - lo)
        for e, c in terms.items():
            out[e - lo] = ring.coerce(c)
        return cls(ring, out, lo, order)

    # --- inspection -----------------------------------------------------

    @property
    def min_exp(self) -> int:
        return self.start

    def valuation(self):
        return self.start if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int):
        if e >= self.order:
            raise PrecisionError(f"coefficient of q^{e} requested; series exact below q^{self.order}")
        if e < self.start:
            return self.ring.zero
        return self.coeffs[e - self.start]

    def items(self) -> Iterable[tuple[int, Any]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.start + i, c

    def to_dict(self) -> dict:
        return dict(self.items())

    def __repr__(self):
        terms = [f"({c})*q^{e}" for e, c in list(self.items())[:8]]
        more = " + ..." if len(terms) == 8 else ""
        body = " + ".join(terms) if terms else "0"
        return f"QSeries[{self.ring!r}]({body}{more} + O(q^{self.order}))"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.ring == other.ring and self.order == other.order
                and self.start == other.start and self.coeffs == other.coeffs)

    __hash__ = None

    # --- truncation and shifting ----------------------------------------

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise PrecisionError(f"cannot raise order {self.order} to {order}")
        if order <= self.start:
            return QSeries.zero(self.ring, order)
        return QSeries(self.ring, self.coeffs[: order - self.start], self.start, order)

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k."""
        return QSeries(self.ring, self.coeffs, self.start + k, self.order + k)

    def map_coeffs(self, fn, ring) -> QSeries:
        return QSeries(ring, [fn(c) for c in self.coeffs], self.start, self.order)

    def coerce_to(self, ring) -> QSeries:
        if ring == self.ring:
            return self
        return self.map_coeffs(ring.coerce, ring)

    # --- arithmetic -----------------------------------------------------

    def _check_ring(self, other: QSeries):
        if other.ring != self.ring:
            raise TypeError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __neg__(self) -> QSeries:
        return QSeries(self.ring, [-c for c in self.coeffs], self.start, self.order)

    def __add__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            return self + QSeries.monomial(self.ring, self.ring.coerce(other), 0, self.order)
        self._check_ring(other)
        order = min(self.order, other.order)
        lo = min(self.start, other.start, order)
        out = [self.ring.zero] * (order - lo)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.start + i
                if e >= order:
                    break
                if c:
                    out[e - lo] = out[e - lo] + c
        return QSeries(self.ring, out, lo, order)

    __radd__ = __add__

    def __sub__(self, other) -> QSeries:
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def scale(self, c) -> QSeries:
        c = self.ring.coerce(c)
        if not c:
            return QSeries.zero(self.ring, self.order)
        return QSeries(self.ring, [x * c for x in self.coeffs], self.start, self.order)

    def __mul__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check_ring(other)
        f, g = self, other
        order = min(f.order + g.start, g.order + f.start)
        start = f.start + g.start
        if f.is_zero() or g.is_zero() or order <= start:
            return QSeries.zero(self.ring, order)
        n = order - start
        a, b = f.coeffs[:n], g.coeffs[:n]
        # iterate the sparser operand on the outside
        if sum(1 for x in a if x) > sum(1 for y in b if y):
            a, b = b, a
        zero = self.ring.zero
        out = [zero] * n
        nzb = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            lim = n - i
            for j, y in nzb:
                if j >= lim:
                    break
                out[i + j] = out[i + j] + x * y
        return QSeries(self.ring, out, start, order)

    __rmul__ = __mul__

    def inv(self) -> QSeries:
        if self.is_zero():
            raise NotAUnit("the zero series is not invertible")
        c0 = self.coeffs[0]
        if not self.ring.is_unit(c0):
            raise NotAUnit(f"trailing coefficient {c0} is not a unit")
        u = self.ring.inv(c0)
        f = self.coeffs
        v = self.start
        n = self.order - v
        g = [u]
        for k in range(1, n):
            acc = self.ring.zero
            for i in range(1, k + 1):
                fi = f[i]
                if fi:
                    acc = acc + fi * g[k - i]
            g.append(-(acc * u))
        return QSeries(self.ring, g, -v, self.order - 2 * v)

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self * other.inv()
        return self.scale(self.ring.inv(self.ring.coerce(other)))

    def __rtruediv__(self, other) -> QSeries:
        return self.inv() * other

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return QSeries.one(self.ring, self.order)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    # --- binomial factors (1 - c q^e) and friends -----------------------

    def mul_binomial(self, a0, a1, k: int) -> QSeries:
        """Multiply by ``a0 + a1*q^k`` in O(length)."""
        ring = self.ring
        if not a1:
            return self.scale(a0)
        if not a0:
            return self.scale(a1).shift(k)
        if k == 0:
            return self.scale(a0 + a1)
        if k < 0:
            return self.mul_binomial(a1, a0, -k).shift(k)
        f = self.coeffs
        n = len(f)
        out = [x * a0 for x in f] if a0 != 1 else list(f)
        for i in range(n - k):
            x = f[i]
            if x:
                out[i + k] = out[i + k] + x * a1
        return QSeries(ring, out, self.start, self.order)

    def div_binomial(self, a0, a1, k: int) -> QSeries:
        """Divide by ``a0 + a1*q^k``; the trailing coefficient must be a unit."""
        ring = self.ring
        if not a1 or k == 0:
            d = a0 + a1 if k == 0 else a0
            if not ring.is_unit(d):
                raise NotAUnit(f"cannot divide by the non-unit constant {d}")
            return self.scale(ring.inv(d))
        if not a0:
            if not ring.is_unit(a1):
                raise NotAUnit(f"cannot divide by the non-unit {a1}")
            return self.scale(ring.inv(a1)).shift(-k)
        if k < 0:
            return self.div_binomial(a1, a0, -k).shift(-k)
        if not ring.is_unit(a0):
            raise NotAUnit(f"trailing coefficient {a0} of the divisor is not a unit")
        u = ring.inv(a0)
        h = [x * u for x in self.coeffs] if a0 != 1 else list(self.coeffs)
        t = -(a1 * u) if a0 != 1 else -a1
        for i in range(k, len(h)):
            y = h[i - k]
            if y:
                h[i] = h[i] + t * y
        return QSeries(ring, h, self.start, self.order)

    # --- structural operators -------------------------------------------

    def huff(self, m: int) -> QSeries:
        """Keep only exponents divisible by ``m``, at their original positions."""
        if m < 1:
            raise ValueError("modulus must be positive")
        zero = self.ring.zero
        out = [c if (self.start + i) % m == 0 else zero for i, c in enumerate(self.coeffs)]
        return QSeries(self.ring, out, self.start, self.order)

    def dissect(self, m: int) -> list[QSeries]:
        if m < 1:
            raise ValueError("modulus must be positive")
        zero = self.ring.zero
        parts = []
        for r in range(m):
            out = [c if (self.start + i) % m == r else zero for i, c in enumerate(self.coeffs)]
            parts.append(QSeries(self.ring, out, self.start, self.order))
        return parts

    def scale_exp(self, m: int) -> QSeries:
        """Substitute q -> q^m."""
        if m < 1:
            raise ValueError("scale factor must be positive")
        if m == 1:
            return self
        order = m * (self.order - 1) + 1
        if self.is_zero():
            return QSeries.zero(self.ring, order)
        start = m * self.start
        out = [self.ring.zero] * (order - start)
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return QSeries(self.ring, out, start, order)

    def subst_omega(self, k: int) -> QSeries:
        """Substitute q -> omega^k q; coefficients move to Q(omega)."""
        if self.ring == QQ or self.ring == QQw:
            target = QQw
            lift = QQw.coerce
        elif isinstance(self.ring, LaurentPolyRing):
            target = LaurentPolyRing(self.ring.var, QQw)

            def lift(p):
                return LaurentPoly(p.var, {e: QQw.coerce(c) for e, c in p.terms.items()})
        else:
            raise TypeError(f"omega substitution not defined over {self.ring!r}")
        out = []
        for i, c in enumerate(self.coeffs):
            r = (k * (self.start + i)) % 3
            c = lift(c)
            out.append(c if r == 0 else c * eis_root_power(r))
        return QSeries(target, out, self.start, self.order)


# --- comparison -------------------------------------------------------------


@dataclass
class CheckResult:
    ok: bool
    order: int
    name: str = ""
    first_diff_exp: int | None = None
    lhs_coeff: Any = None
    rhs_coeff: Any = None
    steps: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def first_difference(f: QSeries, g: QSeries, order: int):
    """First exponent below ``order`` where f and g differ, or None."""
    for s in (f, g):
        if s.order < order:
            raise PrecisionError(f"comparison through q^{order - 1} requested, "
                                 f"but a side is only exact below q^{s.order}")
    lo = min(f.start, g.start)
    for e in range(lo, order):
        if f[e] != g[e]:
            return e
    return None


def check_equal(f: QSeries, g: QSeries, order: int, name: str = "") -> CheckResult:
    e = first_difference(f, g, order)
    if e is None:
        return CheckResult(True, order, name)
    return CheckResult(False, order, name, e, f[e], g[e])


def all_of(name: str, order: int, steps: dict) -> CheckResult:
    """Fold named sub-checks into one result; the first failing step is reported."""
    for step in steps.values():
        if not step:
            return CheckResult(False, order, name, step.first_diff_exp,
                               step.lhs_coeff, step.rhs_coeff, steps)
    return CheckResult(True, order, name, steps=steps)


# --- products ---------------------------------------------------------------


@dataclass(frozen=True)
class PochFactor:
    """(c q^j; q^m)_n raised to ``power``; ``n=None`` means n = infinity."""

    c: Any
    j: int
    m: int
    n: int | None = None
    power: int = 1


@dataclass(frozen=True)
class ProdSpec:
    factors: tuple = ()

    def __iter__(self):
        return iter(self.factors)


def _factor_exponents(j: int, m: int, n, bound: int):
    """q-exponents j + k m of the factors that can matter below ``bound``."""
    if n is None:
        if m < 1:
            raise DivergentProduct(f"infinite product with step q^{m}")
        k = 0
        while j + k * m < bound:
            yield j + k * m
            k += 1
    else:
        if n < 0:
            raise ValueError(f"negative Pochhammer length {n}")
        for k in range(n):
            e = j + k * m
            if e < bound or m <= 0:
                yield e
            elif m > 0:
                break


def negative_support(factors) -> int:
    """Total |exponent| of multiplied factors with negative q-exponent.

    This is the precision a product loses to factors like (1 - c q^-1).
    """
    total = 0
    for f in factors:
        if f.power <= 0 or not f.c:
            continue
        if f.n is None and f.m >= 1:
            k_max = max(0, -(f.j // f.m)) + 1
        else:
            k_max = f.n if f.n is not None else 0
        for k in range(k_max):
            e = f.j + k * f.m
            if e < 0:
                total += -e * f.power
    return total


def apply_poch(series: QSeries, c, j: int, m: int, n, power: int, bound: int) -> QSeries:
    """series * (c q^j; q^m)_n ** power, using factors below ``bound``."""
    ring = series.ring
    c = ring.coerce(c)
    if not c or power == 0:
        return series
    one = ring.one
    for e in _factor_exponents(j, m, n, bound):
        if e == 0 and not (one - c):
            if n is None:
                raise ZeroFactor(f"(1 - {c}) vanishes in an infinite product")
            if power > 0:
                return QSeries.zero(ring, series.order)
            raise NotAUnit("division by a vanishing Pochhammer factor")
        for _ in range(abs(power)):
            if power > 0:
                series = series.mul_binomial(one, -c, e)
            else:
                series = series.div_binomial(one, -c, e)
    return series


def qs_pochhammer(c, j: int, m: int, n, N: int, ring=None) -> QSeries:
    """(c q^j; q^m)_n, exact through q^(N-1).  ``n=None`` is n = infinity."""
    ring = ring if ring is not None else ring_of(c)
    return qs_eta_quotient(ProdSpec((PochFactor(c, j, m, n, 1),)), N, ring)


def apply_prodspec(seed: QSeries, factors) -> QSeries:
    """seed * prod of Pochhammer factors, exact wherever the tracked order says.

    Factors whose exponent cannot influence a coefficient below the final
    order are skipped; the bound accounts for the lowest valuation the
    running product can reach and for order raised by dividing out
    negative-exponent factors.
    """
    factors = tuple(factors)
    floor = min(0, seed.start if not seed.is_zero() else 0) - negative_support(factors)
    lift = 0
    for f in factors:
        if f.power < 0 and f.c:
            for e in _factor_exponents(f.j, f.m, f.n, 0):
                lift += -e * -f.power
    bound = seed.order + lift - floor
    result = seed
    # divisions first; multiplications by negative-exponent factors (which cost precision) last
    for f in sorted(factors, key=lambda f: 0 if f.power < 0 else 1):
        result = apply_poch(result, f.c, f.j, f.m, f.n, f.power, bound)
    return result


def qs_eta_quotient(spec, N: int, ring=QQ, seed: QSeries | None = None) -> QSeries:
    """Product of Pochhammer factors raised to integer powers, exact below q^N.

    ``seed`` (optional) is multiplied in first; it must be exact through
    N + negative_support(spec) - min(0, valuation of seed).
    """
    factors = tuple(spec)
    if seed is None:
        seed = QSeries.one(ring, N + negative_support(factors))
    result = apply_prodspec(seed, factors)
    if result.is_zero() and result.order >= N:
        return QSeries.zero(seed.ring, N)
    if result.order < N:
        raise PrecisionError(f"product only exact below q^{result.order}, wanted q^{N}")
    return result.truncate(N)


# --- thin functional API ----------------------------------------------------


def qs_add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def qs_neg(f: QSeries) -> QSeries:
    return -f


def qs_mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def qs_inv(f: QSeries) -> QSeries:
    return f.inv()


def qs_huff(f: QSeries, m: int) -> QSeries:
    return f.huff(m)


def qs_dissect(f: QSeries, m: int) -> list[QSeries]:
    return f.dissect(m)


def qs_scale_exp(f: QSeries, m: int) -> QSeries:
    return f.scale_exp(m)


def qs_subst_omega(f: QSeries, k: int) -> QSeries:
    return f.subst_omega(k)


def subst_var(f: QSeries, shift: int, order_hint: int | None = None) -> QSeries:
    """Specialise a series over Laurent polynomials in ``a`` (or ``z``) by var -> q^shift.

    The coefficient at q^e * var^k moves to q^(e + shift*k).  Exactness of the
    result assumes the var-degrees beyond the truncation stay within the range
    observed in the computed part; for shift >= 0 and nonnegative degrees this
    holds trivially and the order is preserved.
    """
    if not isinstance(f.ring, LaurentPolyRing):
        raise TypeError("subst_var needs a Laurent polynomial coefficient ring")
    base = f.ring.base
    degs = [k for _, p in f.items() for k in p.terms]
    if shift >= 0:
        order = f.order + shift * min([0, *degs])
    else:
        order = f.order + shift * max([0, *degs])
    if order_hint is not None:
        order = min(order, order_hint)
    acc: dict = {}
    for e, p in f.items():
        for k, c in p.terms.items():
            t = e + shift * k
            if t < order:
                acc[t] = acc.get(t, 0) + c
    return QSeries.from_dict(base, acc, order)


# --- Ramanujan's theta functions --------------------------------------------


def theta_phi(N: int, sign: int = -1) -> QSeries:
    """phi(sign*q) = sum over all integers n of sign^n q^(n^2)."""
    terms = {0: 1}
    n = 1
    while n * n < N:
        terms[n * n] = 2 * sign ** n
        n += 1
    return QSeries.from_dict(QQ, terms, N)


def theta_psi(N: int) -> QSeries:
    """psi(q) = sum_{n>=0} q^(n(n+1)/2)."""
    terms = {}
    n = 0
    while n * (n + 1) // 2 < N:
        terms[n * (n + 1) // 2] = 1
        n += 1
    return QSeries.from_dict(QQ, terms, N)


def eta_product(parts, N: int, ring=QQ) -> QSeries:
    """Convenience: product of (q^j; q^m)_inf ** power for (j, m, power) triples."""
    return qs_eta_quotient(ProdSpec(tuple(PochFactor(1, j, m, None, p) for j, m, p in parts)), N, ring)
