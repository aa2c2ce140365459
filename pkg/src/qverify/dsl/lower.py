"""Ring inference and lowering of identity ASTs to evaluation plans.

A plan is a small tree of nodes, each with ``eval(N)`` returning a QSeries
exact below q^N.  Summands are turned into ``SumSpec`` records, products of
Pochhammer symbols into ``PochFactor`` lists, and ``ct``/``huff``/``scale``/
``subst`` into the corresponding series operations.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from ..constant_term import theta_z, z_ring, zq_constant_term
from ..errors import NonLowerable, PrecisionError, RingConflict
from ..forms import Form
from ..hypergeom import PhiSpec, SumSpec, TermPoch, phi_eval, sum_eval
from ..rings import OMEGA, QQ, QQw, LaurentPolyRing, eis_root_power
from ..series import PochFactor, QSeries, apply_prodspec, subst_var
from .ast import BinOp, Call, Expr, IdentityEntry, Inf, Neg, Num, Pow, Subst, Sum, Var, free_names

RING_HINTS = ("rational", "eisenstein", "poly-a", "laurent-z")


# --- ring inference ---------------------------------------------------------


@dataclass
class _Usage:
    omega: bool = False
    a: bool = False
    z: bool = False
    z_outside_ct: bool = False


def _args(call: Call) -> list:
    return [x for g in call.groups for x in g]


def _scan(e: Expr, u: _Usage, in_ct=False, in_exp=False, a_bound=False):
    match e:
        case Var("omega"):
            if in_exp:
                raise RingConflict("omega is a coefficient and cannot appear in an exponent")
            u.omega = True
        case Var("a"):
            if in_exp:
                raise RingConflict("a is a coefficient variable and cannot appear in an exponent")
            if not a_bound:
                u.a = True
        case Var("z"):
            if in_exp:
                raise RingConflict("z is a coefficient variable and cannot appear in an exponent")
            u.z = True
            u.z_outside_ct |= not in_ct
        case Var() | Num() | Inf():
            pass
        case Neg(x):
            _scan(x, u, in_ct, in_exp, a_bound)
        case BinOp(_, l, r):
            _scan(l, u, in_ct, in_exp, a_bound)
            _scan(r, u, in_ct, in_exp, a_bound)
        case Pow(b, x):
            _scan(b, u, in_ct, in_exp, a_bound)
            _scan(x, u, in_ct, True, a_bound)
        case Call("ct", groups):
            for x in _args(e):
                _scan(x, u, True, in_exp, a_bound)
        case Call("jtp_theta"):
            u.z = True
            u.z_outside_ct |= not in_ct
        case Call("C"):
            for x in _args(e):
                _scan(x, u, in_ct, True, a_bound)
        case Call("poch", groups):
            for i, g in enumerate(groups):
                for x in g:
                    _scan(x, u, in_ct, in_exp or i == 2, a_bound)
        case Call("huff" | "scale"):
            args = _args(e)
            _scan(args[0], u, in_ct, in_exp, a_bound)
            for x in args[1:]:
                _scan(x, u, in_ct, True, a_bound)
        case Call(_, groups):
            for x in _args(e):
                _scan(x, u, in_ct, in_exp, a_bound)
        case Sum(_, body):
            _scan(body, u, in_ct, in_exp, a_bound)
        case Subst(body, var, rep):
            _scan(body, u, in_ct, in_exp, a_bound or var == "a")
            _scan(rep, u, in_ct, in_exp, a_bound)
        case _:
            raise TypeError(f"not an expression: {e!r}")


def _usage(entry: IdentityEntry) -> _Usage:
    u = _Usage()
    _scan(entry.lhs, u)
    _scan(entry.rhs, u)
    return u


def infer_ring(entry: IdentityEntry):
    """Coefficient ring in which both sides of ``entry`` are compared."""
    u = _usage(entry)
    hint = entry.ring
    if hint is not None and hint not in RING_HINTS:
        raise RingConflict(f"{entry.name}: unknown ring hint {hint!r}")
    if u.a and u.z:
        raise RingConflict(f"{entry.name}: an identity cannot use both a and z")
    if hint == "eisenstein":
        u.omega = True
    base = QQw if u.omega else QQ
    if u.z_outside_ct and hint != "laurent-z":
        raise RingConflict(f"{entry.name}: z appears outside ct(...) in a q-series identity")
    if hint == "rational" and (u.omega or u.a):
        raise RingConflict(f"{entry.name}: ring hint rational, but the entry uses "
                           f"{'omega' if u.omega else 'a'}")
    if hint == "poly-a" or u.a:
        if hint not in (None, "poly-a", "eisenstein"):
            raise RingConflict(f"{entry.name}: ring hint {hint}, but the entry uses a")
        return LaurentPolyRing("a", base)
    if hint == "laurent-z" and u.z_outside_ct:
        return z_ring(base)
    return base


def ring_label(ring) -> str:
    if isinstance(ring, LaurentPolyRing):
        return "poly-a" if ring.var == "a" else "laurent-z"
    return "eisenstein" if ring == QQw else "rational"


# --- plan nodes ---------------------------------------------------------------


class Node:
    ring: Any

    def eval(self, N: int) -> QSeries:
        raise NotImplementedError


@dataclass
class Add(Node):
    ring: Any
    parts: list  # [(sign, Node)]

    def eval(self, N):
        acc = QSeries.zero(self.ring, N)
        for sign, node in self.parts:
            v = node.eval(N)
            acc = acc + v if sign > 0 else acc - v
        return acc


@dataclass
class Product(Node):
    """coeff * q^qexp * prod(series ** power) * prod(Pochhammer factors)."""

    ring: Any
    coeff: Any = 1
    qexp: int = 0
    series: list = field(default_factory=list)  # [(Node, power)]
    pochs: list = field(default_factory=list)   # [PochFactor]

    def eval(self, N):
        M = N - self.qexp
        extra = 0
        for _ in range(6):
            W = M + extra
            body = QSeries.one(self.ring, W)
            for node, power in self.series:
                body = body * (node.eval(W) ** power)
            body = apply_prodspec(body, self.pochs)
            if body.order >= M:
                break
            extra += M - body.order
        else:
            raise PrecisionError(f"could not reach order {N} for a product")
        return body.truncate(M).scale(self.ring.coerce(self.coeff)).shift(self.qexp)


@dataclass
class SumNode(Node):
    ring: Any
    spec: SumSpec

    def eval(self, N):
        return sum_eval(self.spec, N, self.ring)


@dataclass
class CT(Node):
    ring: Any
    inner: Node

    def eval(self, N):
        return zq_constant_term(self.inner.eval(N)).coerce_to(self.ring)


@dataclass
class Huff(Node):
    ring: Any
    inner: Node
    m: int

    def eval(self, N):
        return self.inner.eval(N).huff(self.m)


@dataclass
class Scale(Node):
    ring: Any
    inner: Node
    m: int

    def eval(self, N):
        inner_order = -(-(N - 1) // self.m) + 1
        return self.inner.eval(inner_order).scale_exp(self.m).truncate(N)


@dataclass
class OmegaSubst(Node):
    ring: Any
    inner: Node
    k: int

    def eval(self, N):
        return self.inner.eval(N).subst_omega(self.k).coerce_to(self.ring)


@dataclass
class Specialize(Node):
    """a -> q^shift."""

    ring: Any
    inner: Node
    shift: int

    def eval(self, N):
        extra = 0
        for _ in range(6):
            out = subst_var(self.inner.eval(N + extra), self.shift)
            if out.order >= N:
                return out.truncate(N).coerce_to(self.ring)
            extra += N - out.order
        raise PrecisionError(f"could not reach order {N} after substituting a -> q^{self.shift}")


@dataclass
class Theta(Node):
    ring: Any

    def eval(self, N):
        return theta_z(N, self.ring.base)


@dataclass
class Phi(Node):
    ring: Any
    spec: PhiSpec

    def eval(self, N):
        return phi_eval(self.spec, N, self.ring)


@dataclass
class Plan:
    name: str
    ring: Any
    lhs: Node
    rhs: Node


# --- hypergeometric terms -----------------------------------------------------


@dataclass
class _Term:
    """A product of lowered factors; exponent data are forms in the summation indices."""

    ring: Any
    coeff: Any
    qexp: Form = Form()
    sign: Form = Form()
    powers: list = field(default_factory=list)  # [(ring element, Form)]
    pochs: list = field(default_factory=list)   # [TermPoch] with index-dependent length
    fixed: list = field(default_factory=list)   # [PochFactor]
    series: list = field(default_factory=list)  # [(Node, power)]

    def is_scalar(self) -> bool:
        return not (self.pochs or self.fixed or self.series or self.powers
                    or self.sign.terms or not self.qexp.is_constant())

    def mul(self, o: _Term) -> _Term:
        return _Term(self.ring, self.coeff * o.coeff, self.qexp + o.qexp, self.sign + o.sign,
                     self.powers + o.powers, self.pochs + o.pochs, self.fixed + o.fixed,
                     self.series + o.series)

    def pow(self, k: int) -> _Term:
        c = self.coeff
        if k < 0:
            c = self.ring.inv(c)
        return _Term(self.ring, c ** abs(k), self.qexp * k, self.sign * k,
                     [(b, f * k) for b, f in self.powers],
                     [replace(p, power=p.power * k) for p in self.pochs],
                     [replace(p, power=p.power * k) for p in self.fixed],
                     [(n, p * k) for n, p in self.series])


@dataclass
class _Ctx:
    ring: Any
    base: Any
    indices: frozenset = frozenset()


def _const_int(f: Form, what: str) -> int:
    if not f.is_constant() or f.constant().denominator != 1:
        raise NonLowerable(f"{what} must be an integer constant, got {f}")
    return int(f.constant())


def lower_form(e: Expr, ctx: _Ctx) -> Form:
    """An exponent or length: an integer-valued polynomial of degree <= 2 in the indices."""
    match e:
        case Num(v):
            return Form.const(v)
        case Var(name) if name in ctx.indices:
            return Form.var(name)
        case Var("omega"):
            raise RingConflict("omega is a coefficient and cannot appear in an exponent")
        case Var(name):
            raise NonLowerable(f"{name} cannot appear in an exponent")
        case Neg(x):
            return -lower_form(x, ctx)
        case BinOp("+", l, r):
            return lower_form(l, ctx) + lower_form(r, ctx)
        case BinOp("-", l, r):
            return lower_form(l, ctx) - lower_form(r, ctx)
        case BinOp("*", l, r):
            try:
                return lower_form(l, ctx) * lower_form(r, ctx)
            except ValueError as exc:
                raise NonLowerable(str(exc)) from None
        case BinOp("/", l, r):
            d = lower_form(r, ctx)
            if not d.is_constant() or not d.constant():
                raise NonLowerable("exponents may only be divided by nonzero constants")
            return lower_form(l, ctx) / d.constant()
        case Pow(b, x):
            k = _const_int(lower_form(x, ctx), "power inside an exponent")
            if k < 0:
                raise NonLowerable("negative power inside an exponent")
            try:
                return lower_form(b, ctx) ** k
            except ValueError as exc:
                raise NonLowerable(str(exc)) from None
        case Call("C"):
            args = _args(e)
            if len(args) != 2:
                raise NonLowerable("C takes two arguments")
            k = _const_int(lower_form(args[1], ctx), "second argument of C")
            x = lower_form(args[0], ctx)
            if k == 0:
                return Form.const(1)
            if k == 1:
                return x
            if k == 2:
                try:
                    return x.binom2()
                except ValueError as exc:
                    raise NonLowerable(str(exc)) from None
            raise NonLowerable("only C(x,0), C(x,1) and C(x,2) are supported")
    raise NonLowerable(f"not an exponent expression: {e}")


def _check_integral(f: Form, what: str) -> Form:
    if not f.is_integer_valued():
        raise NonLowerable(f"{what} {f} is not integer-valued")
    return f


def _monomial(e: Expr, ctx: _Ctx, what: str) -> tuple:
    """(coefficient, q-exponent) of a unit monomial c*q^j."""
    t = lower_term(e, ctx)
    if not t.is_scalar():
        raise NonLowerable(f"{what} must be a monomial c*q^j, got {e}")
    return t.coeff, _const_int(t.qexp, f"q-exponent of {what}")


def lower_term(e: Expr, ctx: _Ctx) -> _Term:
    ring = ctx.ring
    match e:
        case Num(v):
            return _Term(ring, ring.coerce(v))
        case Var("q"):
            return _Term(ring, ring.one, Form.const(1))
        case Var("omega"):
            return _Term(ring, ring.coerce(OMEGA))
        case Var("a" | "z" as name):
            if not (isinstance(ring, LaurentPolyRing) and ring.var == name):
                raise RingConflict(f"{name} used outside a {name}-ring context")
            return _Term(ring, ring.gen(1))
        case Var(name):
            raise NonLowerable(f"summation index {name} used as a value; indices belong in exponents")
        case Inf():
            raise NonLowerable("inf is only allowed as a Pochhammer length")
        case Neg(x):
            t = lower_term(x, ctx)
            return replace(t, coeff=-t.coeff)
        case BinOp("*", l, r):
            return lower_term(l, ctx).mul(lower_term(r, ctx))
        case BinOp("/", l, r):
            return lower_term(l, ctx).mul(lower_term(r, ctx).pow(-1))
        case BinOp():
            if free_names(e) & ctx.indices:
                raise NonLowerable("a sum of index-dependent terms cannot be a factor of a summand")
            return _Term(ring, ring.one, series=[(lower_series(e, ctx), 1)])
        case Pow(b, x):
            f = _check_integral(lower_form(x, ctx), "exponent")
            t = lower_term(b, ctx)
            if f.is_constant():
                return t.pow(_const_int(f, "exponent"))
            if not t.is_scalar():
                raise NonLowerable(f"only monomials can be raised to index-dependent powers: {b}")
            out = _Term(ring, ring.one, t.qexp * f)
            if t.coeff == -1:
                out.sign = f
            elif t.coeff != 1:
                out.powers = [(t.coeff, f)]
            return out
        case Call("poch"):
            return _lower_poch(e, ctx)
        case Call("C"):
            raise NonLowerable("C(x,k) is only allowed inside exponents")
        case Call() | Sum() | Subst():
            if free_names(e) & ctx.indices:
                raise NonLowerable(f"{type(e).__name__.lower()} depending on an outer index")
            return _Term(ring, ring.one, series=[(lower_series(e, ctx), 1)])
    raise TypeError(f"not an expression: {e!r}")


def _lower_poch(e: Call, ctx: _Ctx) -> _Term:
    if len(e.groups) != 3 or len(e.groups[1]) != 1 or len(e.groups[2]) != 1:
        raise NonLowerable("poch takes (bases; step; length)")
    step_c, m = _monomial(e.groups[1][0], ctx, "Pochhammer step")
    if step_c != 1 or m < 1:
        raise NonLowerable("Pochhammer step must be q^m with m >= 1")
    length = e.groups[2][0]
    n: Form | None = None
    if not isinstance(length, Inf):
        n = _check_integral(lower_form(length, ctx), "Pochhammer length")
        if n.degree > 1:
            raise NonLowerable("Pochhammer lengths must be linear in the indices")
    out = _Term(ctx.ring, ctx.ring.one)
    for base in e.groups[0]:
        c, j = _monomial(base, ctx, "Pochhammer base")
        if not c:
            continue
        if n is None:
            out.fixed.append(PochFactor(c, j, m, None, 1))
        elif n.is_constant():
            k = _const_int(n, "Pochhammer length")
            if k < 0:
                raise NonLowerable("negative Pochhammer length")
            if k:
                out.fixed.append(PochFactor(c, j, m, k, 1))
        else:
            out.pochs.append(TermPoch(c, j, m, n, 1))
    return out


def _additive(e: Expr, sign=1) -> list:
    match e:
        case BinOp("+", l, r):
            return _additive(l, sign) + _additive(r, sign)
        case BinOp("-", l, r):
            return _additive(l, sign) + _additive(r, -sign)
        case Neg(x):
            return _additive(x, -sign)
    return [(sign, e)]


def _product_node(t: _Term, ctx: _Ctx) -> Node:
    if t.pochs or not t.qexp.is_constant() or t.sign.terms or any(
            not f.is_constant() for _, f in t.powers):
        raise NonLowerable("index-dependent factor outside a sum")
    coeff = t.coeff
    if _const_int(t.sign, "sign") % 2:
        coeff = -coeff
    for b, f in t.powers:
        k = _const_int(f, "power")
        coeff = coeff * (b ** k if k >= 0 else ctx.ring.inv(b) ** -k)
    return Product(ctx.ring, coeff, _const_int(t.qexp, "q-exponent"), t.series, t.fixed)


def _lower_sum(e: Sum, ctx: _Ctx) -> Node:
    names = tuple(n for n, _ in e.binders)
    lows = tuple(lo for _, lo in e.binders)
    if any(lo < 0 for lo in lows):
        raise NonLowerable("summation indices must start at a nonnegative value")
    inner = replace(ctx, indices=ctx.indices | set(names))
    parts = []
    for sign, term in _additive(e.body):
        t = lower_term(term, inner)
        if sign < 0:
            t = replace(t, coeff=-t.coeff)
        spec = SumSpec(names, _check_integral(t.qexp, "q-exponent"), tuple(t.pochs),
                       sign=_check_integral(t.sign, "sign exponent"), powers=tuple(t.powers),
                       coeff=t.coeff, lower=lows)
        node: Node = SumNode(ctx.ring, spec)
        if t.fixed or t.series:
            node = Product(ctx.ring, 1, 0, [(node, 1), *t.series], t.fixed)
        parts.append((1, node))
    return parts[0][1] if len(parts) == 1 else Add(ctx.ring, parts)


def _omega_power(c) -> int:
    for k in range(3):
        if c == eis_root_power(k):
            return k
    raise NonLowerable("q may only be replaced by omega^k * q")


def lower_series(e: Expr, ctx: _Ctx) -> Node:
    ring, base = ctx.ring, ctx.base
    match e:
        case Sum():
            return _lower_sum(e, ctx)
        case BinOp("+" | "-"):
            return Add(ring, [(s, lower_series(x, ctx)) for s, x in _additive(e)])
        case Neg(x):
            return Add(ring, [(-1, lower_series(x, ctx))])
        case Call("ct"):
            args = _args(e)
            if len(args) != 1:
                raise NonLowerable("ct takes one argument")
            if isinstance(ring, LaurentPolyRing):
                raise RingConflict("ct(...) inside an a- or z-valued expression")
            return CT(ring, lower_series(args[0], _Ctx(z_ring(base), base, ctx.indices)))
        case Call("huff" | "scale" as fn):
            args = _args(e)
            if len(args) != 2:
                raise NonLowerable(f"{fn} takes an expression and a modulus")
            m = _const_int(lower_form(args[1], ctx), f"{fn} modulus")
            if m < 1:
                raise NonLowerable(f"{fn} modulus must be positive")
            inner = lower_series(args[0], ctx)
            return Huff(ring, inner, m) if fn == "huff" else Scale(ring, inner, m)
        case Call("jtp_theta"):
            if _args(e):
                raise NonLowerable("jtp_theta takes no arguments")
            if not (isinstance(ring, LaurentPolyRing) and ring.var == "z"):
                raise RingConflict("jtp_theta() is z-valued; use it under ct(...)")
            return Theta(ring)
        case Call("phi"):
            return _lower_phi(e, ctx)
        case Subst(body, "q", rep):
            c, j = _monomial(rep, ctx, "replacement for q")
            if j != 1:
                raise NonLowerable("q may only be replaced by omega^k * q")
            return OmegaSubst(ring, lower_series(body, ctx), _omega_power(c))
        case Subst(body, "a", rep):
            c, s = _monomial(rep, ctx, "replacement for a")
            if c != 1:
                raise NonLowerable("a may only be replaced by a power of q")
            inner = lower_series(body, _Ctx(LaurentPolyRing("a", base), base, ctx.indices))
            return Specialize(ring, inner, s)
        case Subst():
            raise NonLowerable(f"cannot substitute for {e.var}")
    return _product_node(lower_term(e, ctx), ctx)


def _lower_phi(e: Call, ctx: _Ctx) -> Node:
    if len(e.groups) != 4 or len(e.groups[2]) != 1 or len(e.groups[3]) != 1:
        raise NonLowerable("phi takes (upper params; lower params; step; argument)")
    uppers = tuple(_monomial(x, ctx, "phi parameter") for x in e.groups[0] if x != Num(0))
    lowers = tuple(_monomial(x, ctx, "phi parameter") for x in e.groups[1] if x != Num(0))
    step_c, m = _monomial(e.groups[2][0], ctx, "phi step")
    if step_c != 1 or m < 1:
        raise NonLowerable("phi step must be q^m with m >= 1")
    arg = _monomial(e.groups[3][0], ctx, "phi argument")
    # a literal 0 upper parameter still counts towards r
    r_pad = sum(1 for x in e.groups[0] if x == Num(0))
    uppers = uppers + ((0, 0),) * r_pad
    return Phi(ctx.ring, PhiSpec(uppers, lowers, m, arg))


def lower_expr(e: Expr, ring) -> Node:
    base = ring.base if isinstance(ring, LaurentPolyRing) else ring
    return lower_series(e, _Ctx(ring, base))


def lower(entry: IdentityEntry) -> Plan:
    ring = infer_ring(entry)
    return Plan(entry.name, ring, lower_expr(entry.lhs, ring), lower_expr(entry.rhs, ring))


def expr_ring(e: Expr, hint: str | None = None):
    """Ring for a stand-alone expression (used by the expand/ct commands)."""
    return infer_ring(IdentityEntry("<expr>", e, Num(0), ring=hint))
