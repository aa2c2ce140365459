"""Exact coefficient rings.

Three rings share one contract:

* ``QQ``: rationals.  Elements are plain ``int`` or ``fractions.Fraction``
  (always reduced, positive denominator).  Integral values are kept as
  ``int`` where cheap, since most q-series coefficients are integers.
* ``QQw``: the Eisenstein rationals Q(omega), stored on the basis {1, omega}.
* ``LaurentPolyRing(var, base)``: sparse Laurent polynomials in ``a`` or ``z``.

Elements support the usual Python operators and are immutable.  Ring objects
supply ``zero``, ``one``, ``coerce``, ``is_unit`` and ``inv`` for code that is
generic over the coefficient ring (``QSeries`` in particular).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import NotAUnit

Rational = Fraction  # reduced numerator/denominator pair with den > 0


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class Eisenstein:
    """``re + om*omega`` with omega = exp(2 pi i / 3), so omega^2 = -1 - omega."""

    __slots__ = ("re", "om")

    def __init__(self, re=0, om=0):
        object.__setattr__(self, "re", _norm(Fraction(re)) if not isinstance(re, int) else re)
        object.__setattr__(self, "om", _norm(Fraction(om)) if not isinstance(om, int) else om)

    def __setattr__(self, name, value):
        raise AttributeError("Eisenstein is immutable")

    @classmethod
    def _raw(cls, re, om):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", _norm(re))
        object.__setattr__(obj, "om", _norm(om))
        return obj

    def __repr__(self):
        return f"Eisenstein({self.re!s}, {self.om!s})"

    def __str__(self):
        if not self.om:
            return str(self.re)
        om = "w" if self.om == 1 else "-w" if self.om == -1 else f"{self.om}*w"
        if not self.re:
            return om
        return f"{self.re}{om if om.startswith('-') else '+' + om}"

    def __eq__(self, other):
        if isinstance(other, Eisenstein):
            return self.re == other.re and self.om == other.om
        if _is_rational(other):
            return self.om == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if not self.om else hash((self.re, self.om))

    def __bool__(self):
        return bool(self.re) or bool(self.om)

    def __add__(self, other):
        if isinstance(other, Eisenstein):
            return Eisenstein._raw(self.re + other.re, self.om + other.om)
        if _is_rational(other):
            return Eisenstein._raw(self.re + other, self.om)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein._raw(-self.re, -self.om)

    def __sub__(self, other):
        if isinstance(other, Eisenstein):
            return Eisenstein._raw(self.re - other.re, self.om - other.om)
        if _is_rational(other):
            return Eisenstein._raw(self.re - other, self.om)
        return NotImplemented

    def __rsub__(self, other):
        if _is_rational(other):
            return Eisenstein._raw(other - self.re, -self.om)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Eisenstein):
            # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
            a, b, c, d = self.re, self.om, other.re, other.om
            bd = b * d
            return Eisenstein._raw(a * c - bd, a * d + b * c - bd)
        if _is_rational(other):
            return Eisenstein._raw(self.re * other, self.om * other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> Eisenstein:
        # a + b w^2 = (a - b) - b w
        return Eisenstein._raw(self.re - self.om, -self.om)

    def norm(self):
        a, b = self.re, self.om
        return _norm(a * a - a * b + b * b)

    def inv(self) -> Eisenstein:
        n = self.norm()
        if not n:
            raise NotAUnit("zero is not invertible in Q(omega)")
        c = self.conj()
        return Eisenstein._raw(Fraction(c.re) / n, Fraction(c.om) / n)

    def __truediv__(self, other):
        if isinstance(other, Eisenstein):
            return self * other.inv()
        if _is_rational(other):
            if not other:
                raise NotAUnit("division by zero")
            return Eisenstein._raw(Fraction(self.re) / other, Fraction(self.om) / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_rational(other):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = Eisenstein._raw(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_rational(self) -> bool:
        return not self.om


OMEGA = Eisenstein._raw(1 - 1, 1)
_OMEGA_POWERS = (Eisenstein._raw(1, 0), OMEGA, Eisenstein._raw(-1, -1))


def eis_root_power(k: int) -> Eisenstein:
    """omega**k, reduced mod 3 and returned in basis form."""
    return _OMEGA_POWERS[k % 3]


class LaurentPoly:
    """Sparse Laurent polynomial in a single named variable.

    ``terms`` maps integer exponents to nonzero coefficients.  Coefficients
    may be rationals or Eisenstein numbers.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = _norm(c)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _raw(cls, var, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "var", var)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def monomial(cls, var: str, exp: int, coeff=1) -> LaurentPoly:
        return cls._raw(var, {exp: coeff} if coeff else {})

    @classmethod
    def constant(cls, var: str, c) -> LaurentPoly:
        return cls._raw(var, {0: c} if c else {})

    def __repr__(self):
        return f"LaurentPoly({self.var!r}, {dict(sorted(self.terms.items()))!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(f"{self.var}^{e}")
            else:
                parts.append(f"({c})*{self.var}^{e}")
        return " + ".join(parts)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self.terms == other.terms
        if _is_rational(other) or isinstance(other, Eisenstein):
            if not other:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(0) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise TypeError(f"mixing Laurent polynomials in {self.var} and {other.var}")
            return other
        if _is_rational(other) or isinstance(other, Eisenstein):
            return LaurentPoly._raw(self.var, {0: other} if other else {})
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw(self.var, {})
        if len(b) == 1:
            (eb, cb), = b.items()
            if cb == 1:
                return LaurentPoly._raw(self.var, {e + eb: c for e, c in a.items()})
            return LaurentPoly._raw(self.var, {e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            return other * self
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return LaurentPoly._raw(self.var, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly._raw(self.var, {e + k: c for e, c in self.terms.items()})

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return bool(c)

    def inv(self) -> LaurentPoly:
        if len(self.terms) != 1:
            raise NotAUnit(f"{self} is not a unit in the Laurent polynomial ring")
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.var, {-e: ring_inv(c)})

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = LaurentPoly._raw(self.var, {0: 1})
        for _ in range(k):
            result = result * self
        return result

    def coeff(self, e: int):
        return self.terms.get(e, 0)

    def mindeg(self):
        return min(self.terms) if self.terms else None

    def maxdeg(self):
        return max(self.terms) if self.terms else None

    def substitute(self, value):
        """Evaluate at ``var = value`` (value must support ** with negative ints when needed)."""
        total = 0
        for e, c in self.terms.items():
            total = total + c * value ** e
        return total


# --- ring objects -----------------------------------------------------------


class RationalField:
    name = "rational"
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return _norm(x)
        if isinstance(x, Eisenstein) and x.is_rational:
            return x.re
        if isinstance(x, _RationalABC):
            return _norm(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def contains(self, x) -> bool:
        return _is_rational(x)

    def is_unit(self, x) -> bool:
        return bool(x)

    def inv(self, x):
        if not x:
            raise NotAUnit("zero is not invertible")
        if x == 1 or x == -1:
            return int(x)
        return _norm(1 / Fraction(x))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class EisensteinField:
    name = "eisenstein"
    zero = Eisenstein._raw(0, 0)
    one = Eisenstein._raw(1, 0)

    def coerce(self, x):
        if isinstance(x, Eisenstein):
            return x
        if _is_rational(x):
            return Eisenstein._raw(x, 0)
        raise TypeError(f"cannot coerce {x!r} to Q(omega)")

    def contains(self, x) -> bool:
        return isinstance(x, Eisenstein)

    def is_unit(self, x) -> bool:
        return bool(x)

    def inv(self, x):
        return self.coerce(x).inv()

    def __repr__(self):
        return "QQ(w)"

    def __eq__(self, other):
        return isinstance(other, EisensteinField)

    def __hash__(self):
        return hash("QQw")


class LaurentPolyRing:
    def __init__(self, var: str, base=None):
        if var not in ("a", "z"):
            raise ValueError(f"unsupported Laurent variable {var!r}")
        self.var = var
        self.base = base if base is not None else QQ
        self.zero = LaurentPoly._raw(var, {})
        self.one = LaurentPoly._raw(var, {0: self.base.one})

    @property
    def name(self):
        kind = "poly-a" if self.var == "a" else "laurent-z"
        return kind if self.base == QQ else f"{kind}/{self.base.name}"

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            if x.var != self.var:
                raise TypeError(f"variable mismatch: {x.var} vs {self.var}")
            return x
        x = self.base.coerce(x)
        return LaurentPoly._raw(self.var, {0: x} if x else {})

    def contains(self, x) -> bool:
        return isinstance(x, LaurentPoly) and x.var == self.var

    def gen(self, exp: int = 1, coeff=1) -> LaurentPoly:
        return LaurentPoly.monomial(self.var, exp, self.base.coerce(coeff))

    def is_unit(self, x) -> bool:
        return self.coerce(x).is_unit()

    def inv(self, x):
        return self.coerce(x).inv()

    def __repr__(self):
        return f"LaurentPolyRing({self.var!r}, {self.base!r})"

    def __eq__(self, other):
        return isinstance(other, LaurentPolyRing) and (self.var, self.base) == (other.var, other.base)

    def __hash__(self):
        return hash((self.var, self.base))


QQ = RationalField()
QQw = EisensteinField()


def ring_of(x):
    """Smallest bundled ring containing the element ``x``."""
    if _is_rational(x):
        return QQ
    if isinstance(x, Eisenstein):
        return QQw
    if isinstance(x, LaurentPoly):
        base = QQw if any(isinstance(c, Eisenstein) for c in x.terms.values()) else QQ
        return LaurentPolyRing(x.var, base)
    raise TypeError(f"{x!r} is not a ring element")


def ring_add(x, y):
    return _norm(x + y)


def ring_mul(x, y):
    return _norm(x * y)


def ring_neg(x):
    return -x


def ring_inv(x):
    if _is_rational(x):
        return QQ.inv(x)
    if isinstance(x, (Eisenstein, LaurentPoly)):
        return x.inv()
    raise TypeError(f"{x!r} is not a ring element")
