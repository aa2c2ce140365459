"""Exact truncated q-series verification of partition identities."""
from .errors import (DivergentProduct, NonLowerable, NonTerminating, NotAUnit, ParseError,
                     PrecisionError, QVerifyError, RingConflict, UndeclaredVariable, ZeroFactor)
from .rings import OMEGA, QQ, QQw, Eisenstein, LaurentPoly, LaurentPolyRing
from .series import CheckResult, PochFactor, ProdSpec, QSeries, qs_eta_quotient, qs_pochhammer

__all__ = [
    "DivergentProduct", "NonLowerable", "NonTerminating", "NotAUnit", "ParseError", "PrecisionError",
    "QVerifyError", "RingConflict", "UndeclaredVariable", "ZeroFactor",
    "OMEGA", "QQ", "QQw", "Eisenstein", "LaurentPoly", "LaurentPolyRing",
    "CheckResult", "PochFactor", "ProdSpec", "QSeries", "qs_eta_quotient", "qs_pochhammer",
]
__version__ = "0.1.0"
