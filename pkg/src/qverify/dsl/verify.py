"""Verification of catalog entries and their negative-control mutations."""
from __future__ import annotations

import time
from dataclasses import dataclass, replace

from ..config import DEFAULT_PAD, RunConfig
from ..errors import PrecisionError, QVerifyError
from ..series import first_difference
from .ast import BinOp, Call, Expr, IdentityEntry, Neg, Num, Pow, Subst, Sum, Var
from .lower import lower

PAD = DEFAULT_PAD


def default_order() -> int:
    return RunConfig.from_env().default_order


@dataclass(frozen=True)
class VerificationReport:
    name: str
    status: str  # PASS | FAIL | ERROR
    order: int
    first_diff_exp: int | None = None
    lhs_coeff: str | None = None
    rhs_coeff: str | None = None
    error: str | None = None
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "order": self.order}
        if self.status == "FAIL":
            out.update(first_diff_exp=self.first_diff_exp, lhs_coeff=self.lhs_coeff,
                       rhs_coeff=self.rhs_coeff)
        if self.status == "ERROR":
            out["error"] = self.error
        out["ms"] = round(self.ms, 3)
        return out

    def line(self) -> str:
        """One human-readable line without timing, so output is reproducible."""
        head = f"{self.status:<5} {self.name} (order {self.order})"
        if self.status == "FAIL":
            return f"{head}: first difference at q^{self.first_diff_exp}: lhs {self.lhs_coeff}, rhs {self.rhs_coeff}"
        if self.status == "ERROR":
            return f"{head}: {self.error}"
        return head


def verify(entry: IdentityEntry, order: int | None = None, pad: int = PAD) -> VerificationReport:
    """Compare both sides of ``entry`` exactly below q^order.

    The order is the override if given, else the entry's own order, else the
    default.  Evaluation errors produce an ERROR report instead of raising.
    """
    N = order if order is not None else (entry.order or default_order())
    t0 = time.perf_counter()
    try:
        plan = lower(entry)
        lhs = plan.lhs.eval(N + pad)
        rhs = plan.rhs.eval(N + pad)
        if min(lhs.order, rhs.order) < N:
            raise PrecisionError(f"sides only exact below q^{min(lhs.order, rhs.order)}")
        diff = first_difference(lhs, rhs, N)
    except (QVerifyError, ArithmeticError, ValueError, TypeError, RecursionError) as exc:
        ms = (time.perf_counter() - t0) * 1000
        return VerificationReport(entry.name, "ERROR", N, error=f"{type(exc).__name__}: {exc}", ms=ms)
    ms = (time.perf_counter() - t0) * 1000
    if diff is None:
        return VerificationReport(entry.name, "PASS", N, ms=ms)
    return VerificationReport(entry.name, "FAIL", N, diff, str(lhs[diff]), str(rhs[diff]), ms=ms)


# --- negative controls ------------------------------------------------------


def _bump_q(e: Expr):
    """Raise the first power of q found in ``e`` by one (skipping exponent 0); None if none."""
    match e:
        case Var("q"):
            return Pow(Var("q"), Num(2))
        case Pow(Var("q"), Num(k)):
            return Pow(Var("q"), Num(k + 1 if k + 1 else k + 2))
        case Pow(Var("q"), Neg(Num(k))):
            return Pow(Var("q"), Num(-k + 1 if -k + 1 else -k + 2))
        case Neg(x):
            r = _bump_q(x)
            return None if r is None else Neg(r)
        case BinOp(op, l, r):
            new = _bump_q(l)
            if new is not None:
                return BinOp(op, new, r)
            new = _bump_q(r)
            return None if new is None else BinOp(op, l, new)
        case Pow(b, x):
            new = _bump_q(b)
            return None if new is None else Pow(new, x)
        case Call("poch", groups) if groups:
            first = groups[0]
            for i, x in enumerate(first):
                new = _bump_q(x)
                if new is not None:
                    return Call("poch", (first[:i] + (new,) + first[i + 1:],) + groups[1:])
            return None
        case Call(name, groups):
            for gi, g in enumerate(groups):
                for i, x in enumerate(g):
                    new = _bump_q(x)
                    if new is not None:
                        g2 = g[:i] + (new,) + g[i + 1:]
                        return Call(name, groups[:gi] + (g2,) + groups[gi + 1:])
            return None
        case Sum(binders, body):
            new = _bump_q(body)
            return None if new is None else Sum(binders, new)
        case Subst(body, var, rep):
            new = _bump_q(body)
            return None if new is None else Subst(new, var, rep)
    return None


def _first_poch_bump(e: Expr):
    """Bump a q-power inside the first Pochhammer base of ``e``."""
    match e:
        case Call("poch"):
            return _bump_q(e)
        case Neg(x):
            r = _first_poch_bump(x)
            return None if r is None else Neg(r)
        case BinOp(op, l, r):
            new = _first_poch_bump(l)
            if new is not None:
                return BinOp(op, new, r)
            new = _first_poch_bump(r)
            return None if new is None else BinOp(op, l, new)
        case Pow(b, x):
            new = _first_poch_bump(b)
            return None if new is None else Pow(new, x)
        case Call(name, groups):
            for gi, g in enumerate(groups):
                for i, x in enumerate(g):
                    new = _first_poch_bump(x)
                    if new is not None:
                        g2 = g[:i] + (new,) + g[i + 1:]
                        return Call(name, groups[:gi] + (g2,) + groups[gi + 1:])
            return None
        case Sum(binders, body):
            new = _first_poch_bump(body)
            return None if new is None else Sum(binders, new)
        case Subst(body, var, rep):
            new = _first_poch_bump(body)
            return None if new is None else Subst(new, var, rep)
    return None


def mutate(entry: IdentityEntry) -> IdentityEntry:
    """Perturb one q-exponent: preferably in a Pochhammer base on the right-hand side."""
    for side in ("rhs", "lhs"):
        new = _first_poch_bump(getattr(entry, side))
        if new is not None:
            return replace(entry, name=entry.name + "-mutated", **{side: new})
    for side in ("rhs", "lhs"):
        new = _bump_q(getattr(entry, side))
        if new is not None:
            return replace(entry, name=entry.name + "-mutated", **{side: new})
    raise ValueError(f"{entry.name}: no q-exponent to perturb")
