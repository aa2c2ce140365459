"""Integer-valued polynomial forms of degree <= 2 in summation indices.

Exponents of q, signs and Pochhammer lengths inside a summand are all forms
like ``2*C(m,2) + 9*C(n,2) + 3*m*n + 2*m + 7*n``.  Coefficients are rational
so that binomials ``C(n,2) = n(n-1)/2`` stay exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

MAX_DEGREE = 2


def _key(names) -> tuple:
    return tuple(sorted(names))


@dataclass(frozen=True)
class Form:
    terms: tuple = ()  # sorted ((monomial, coeff), ...); monomial is a sorted tuple of index names

    @classmethod
    def from_dict(cls, d: Mapping) -> Form:
        clean = {}
        for k, v in d.items():
            v = Fraction(v)
            if v:
                clean[_key(k)] = clean.get(_key(k), 0) + v
        return cls(tuple(sorted((k, v) for k, v in clean.items() if v)))

    @classmethod
    def const(cls, c) -> Form:
        return cls.from_dict({(): c})

    @classmethod
    def var(cls, name: str) -> Form:
        return cls.from_dict({(name,): 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    # --- algebra --------------------------------------------------------

    def __add__(self, other) -> Form:
        other = _as_form(other)
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return Form.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> Form:
        return Form(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other) -> Form:
        return self + (-_as_form(other))

    def __rsub__(self, other) -> Form:
        return _as_form(other) - self

    def __mul__(self, other) -> Form:
        other = _as_form(other)
        d: dict = {}
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                k = _key(k1 + k2)
                if len(k) > MAX_DEGREE:
                    raise ValueError("exponent forms are limited to degree 2")
                d[k] = d.get(k, 0) + v1 * v2
        return Form.from_dict(d)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Form:
        c = Fraction(c)
        if not c:
            raise ZeroDivisionError("form divided by zero")
        return Form(tuple((k, v / c) for k, v in self.terms))

    def __pow__(self, k: int) -> Form:
        if k < 0:
            raise ValueError("negative power of a form")
        out = Form.const(1)
        for _ in range(k):
            out = out * self
        return out

    def binom2(self) -> Form:
        return self * (self - 1) / 2

    # --- queries --------------------------------------------------------

    @property
    def variables(self) -> frozenset:
        return frozenset(n for k, _ in self.terms for n in k)

    @property
    def degree(self) -> int:
        return max((len(k) for k, _ in self.terms), default=0)

    def is_constant(self) -> bool:
        return self.degree == 0

    def constant(self) -> Fraction:
        return self.as_dict().get((), Fraction(0))

    def coeff(self, *names) -> Fraction:
        return self.as_dict().get(_key(names), Fraction(0))

    def evaluate(self, env: Mapping[str, int]):
        total = Fraction(0)
        for k, v in self.terms:
            t = v
            for n in k:
                t *= env[n]
            total += t
        if total.denominator != 1:
            raise ValueError(f"form {self} is not integral at {dict(env)}")
        return total.numerator

    def substitute(self, env: Mapping[str, int]) -> Form:
        """Fix some variables, returning a form in the rest."""
        d: dict = {}
        for k, v in self.terms:
            rest = []
            for n in k:
                if n in env:
                    v = v * env[n]
                else:
                    rest.append(n)
            k2 = tuple(rest)
            d[k2] = d.get(k2, 0) + v
        return Form.from_dict(d)

    def is_integer_valued(self) -> bool:
        names = sorted(self.variables)
        for pt in itertools.product(range(3), repeat=len(names)):
            total = Fraction(0)
            env = dict(zip(names, pt))
            for k, v in self.terms:
                t = v
                for n in k:
                    t *= env[n]
                total += t
            if total.denominator != 1:
                return False
        return True

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms:
            mono = "*".join(k)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            else:
                parts.append(f"({v})*{mono}")
        return " + ".join(parts)


def _as_form(x) -> Form:
    if isinstance(x, Form):
        return x
    return Form.const(x)


ZERO = Form()
