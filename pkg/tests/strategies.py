"""Hypothesis strategies for ring elements and series."""
from fractions import Fraction

from hypothesis import strategies as st

from qverify.rings import QQ, QQw, Eisenstein, LaurentPoly, LaurentPolyRing

small_int = st.integers(min_value=-30, max_value=30)
rationals = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=12)).map(
    lambda f: f.numerator if f.denominator == 1 else f)
eisenstein = st.builds(Eisenstein, rationals, rationals)


def laurent(var: str, coeffs=rationals, lo=-4, hi=4, max_terms=4):
    return st.dictionaries(st.integers(min_value=lo, max_value=hi), coeffs, max_size=max_terms).map(
        lambda d: LaurentPoly(var, d))


RINGS = {
    "rational": (QQ, rationals),
    "eisenstein": (QQw, eisenstein),
    "poly-a": (LaurentPolyRing("a", QQ), laurent("a")),
    "laurent-z/eisenstein": (LaurentPolyRing("z", QQw), laurent("z", eisenstein)),
}


def int_series_dicts(max_exp=40, lo=0):
    return st.dictionaries(st.integers(min_value=lo, max_value=max_exp), small_int, max_size=25)
