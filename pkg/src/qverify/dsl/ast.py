"""Syntax tree for identity catalogs, plus a printer whose output reparses."""
from __future__ import annotations

from dataclasses import dataclass, field


class Expr:
    pass


@dataclass(frozen=True)
class Num(Expr):
    value: int


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Inf(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: Expr


@dataclass(frozen=True)
class Call(Expr):
    """``name(g1; g2; ...)`` where each group is a comma-separated tuple of expressions."""

    name: str
    groups: tuple = ()


@dataclass(frozen=True)
class Sum(Expr):
    binders: tuple  # ((index name, lower bound), ...)
    body: Expr


@dataclass(frozen=True)
class Subst(Expr):
    body: Expr
    var: str
    replacement: Expr


@dataclass(frozen=True)
class IdentityEntry:
    name: str
    lhs: Expr
    rhs: Expr
    order: int | None = None
    ring: str | None = None
    tags: tuple = ()
    line: int | None = field(default=None, compare=False)


BUILTIN_VARS = frozenset({"q", "a", "z", "omega"})
FUNCTIONS = frozenset({"poch", "ct", "huff", "scale", "C", "jtp_theta", "phi"})


def to_text(e: Expr) -> str:
    match e:
        case Num(v):
            return str(v)
        case Var(name):
            return name
        case Inf():
            return "inf"
        case Neg(x):
            return f"(-{to_text(x)})"
        case BinOp(op, l, r):
            return f"({to_text(l)} {op} {to_text(r)})"
        case Pow(b, x):
            return f"{_atom(b)}^{_atom(x)}"
        case Call(name, groups):
            return f"{name}(" + "; ".join(", ".join(to_text(x) for x in g) for g in groups) + ")"
        case Sum(binders, body):
            bs = ", ".join(f"{n}>={lo}" for n, lo in binders)
            return f"sum({bs}; {to_text(body)})"
        case Subst(body, var, rep):
            return f"subst({to_text(body)}, {var} -> {to_text(rep)})"
    raise TypeError(f"not an expression: {e!r}")


def _atom(e: Expr) -> str:
    if isinstance(e, (Num, Var, Inf, Call)):
        return to_text(e)
    t = to_text(e)
    return t if t.startswith("(") and _balanced_outer(t) else f"({t})"


def _balanced_outer(t: str) -> bool:
    depth = 0
    for i, ch in enumerate(t):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(t) - 1:
            return False
    return True


def entry_to_text(entry: IdentityEntry) -> str:
    head = f'identity "{entry.name}"'
    if entry.order is not None:
        head += f" order {entry.order}"
    if entry.ring is not None:
        head += f" ring {entry.ring}"
    if entry.tags:
        head += " tags " + ", ".join(f'"{t}"' for t in entry.tags)
    return f"{head} {{\n  lhs = {to_text(entry.lhs)};\n  rhs = {to_text(entry.rhs)};\n}}\n"


def free_names(e: Expr, bound=frozenset()) -> set:
    """Summation indices occurring free in ``e``."""
    match e:
        case Var(name):
            return set() if name in BUILTIN_VARS or name in bound else {name}
        case Num() | Inf():
            return set()
        case Neg(x):
            return free_names(x, bound)
        case BinOp(_, l, r):
            return free_names(l, bound) | free_names(r, bound)
        case Pow(b, x):
            return free_names(b, bound) | free_names(x, bound)
        case Call(_, groups):
            return set().union(*(free_names(x, bound) for g in groups for x in g))
        case Sum(binders, body):
            return free_names(body, bound | {n for n, _ in binders})
        case Subst(body, _, rep):
            return free_names(body, bound) | free_names(rep, bound)
    raise TypeError(f"not an expression: {e!r}")


def uses(e: Expr, name: str) -> bool:
    match e:
        case Var(n):
            return n == name
        case Num() | Inf():
            return False
        case Neg(x):
            return uses(x, name)
        case BinOp(_, l, r):
            return uses(l, name) or uses(r, name)
        case Pow(b, x):
            return uses(b, name) or uses(x, name)
        case Call(_, groups):
            return any(uses(x, name) for g in groups for x in g)
        case Sum(_, body):
            return uses(body, name)
        case Subst(body, _, rep):
            return uses(body, name) or uses(rep, name)
    raise TypeError(f"not an expression: {e!r}")
