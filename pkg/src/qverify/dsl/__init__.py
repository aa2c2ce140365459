"""Identity catalogs: parsing, lowering to series computations, and verification."""
from .ast import IdentityEntry, entry_to_text, to_text
from .lower import expr_ring, infer_ring, lower, lower_expr
from .parser import parse, parse_expr, parse_file
from .verify import VerificationReport, mutate, verify

__all__ = ["IdentityEntry", "VerificationReport", "entry_to_text", "expr_ring", "infer_ring", "lower",
           "lower_expr", "mutate", "parse", "parse_expr", "parse_file", "to_text", "verify"]
