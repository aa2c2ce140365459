"""Command line front end: ``qverify check | expand | ct``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .config import RunConfig
from .errors import ParseError, QVerifyError, RingConflict, UndeclaredVariable
from .dsl.ast import Call
from .dsl.lower import expr_ring, lower_expr
from .dsl.parser import parse, parse_expr
from .dsl.verify import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def bundled_catalog_text() -> str:
    return resources.files("qverify").joinpath("data/catalog.qid").read_text(encoding="utf-8")


def _verify_job(args):
    entry, cfg = args
    return verify(entry, cfg.order_for(entry.order), cfg.pad)


def _format_series(f, N: int) -> str:
    return " ".join(f"{e}:{c}" for e, c in f.items() if e < N)


def cmd_check(ns) -> int:
    try:
        text = bundled_catalog_text() if ns.catalog is None else open(ns.catalog, encoding="utf-8").read()
        entries = parse(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, UndeclaredVariable, RingConflict) as exc:
        print(f"catalog error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.only:
        known = {e.name for e in entries}
        missing = [n for n in ns.only if n not in known]
        if missing:
            print(f"error: no such entries: {', '.join(missing)}", file=sys.stderr)
            return EXIT_USAGE
        entries = [e for e in entries if e.name in set(ns.only)]
    cfg = RunConfig.from_env(order=ns.order, jobs=ns.jobs)
    jobs = [(e, cfg) for e in entries]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_verify_job, jobs))
    else:
        reports = [_verify_job(j) for j in jobs]
    for r in reports:
        print(r.line())
    counts = {s: sum(r.status == s for r in reports) for s in ("PASS", "FAIL", "ERROR")}
    print(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['ERROR']} errors")
    if ns.json:
        with open(ns.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _eval_expr(text: str, order: int | None, force_ct: bool):
    """Parse, lower and evaluate an expression; returns (series, N) or an exit code."""
    N = RunConfig.from_env(order=order).order_for(None)
    try:
        expr = parse_expr(text)
        if force_ct and not (isinstance(expr, Call) and expr.name == "ct"):
            expr = Call("ct", ((expr,),))
        node = lower_expr(expr, expr_ring(expr))
    except QVerifyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE, N
    try:
        return node.eval(N), N
    except (QVerifyError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL, N


def cmd_expand(ns) -> int:
    f, N = _eval_expr(ns.expr, ns.order, force_ct=False)
    if isinstance(f, int):
        return f
    print(_format_series(f, N))
    return EXIT_OK


def cmd_ct(ns) -> int:
    f, N = _eval_expr(ns.expr, ns.order, force_ct=True)
    if isinstance(f, int):
        return f
    print(_format_series(f, N))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qverify", description="Exact truncated verification of q-series identities.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify the identities of a catalog")
    c.add_argument("catalog", nargs="?", help=".qid catalog (default: the bundled catalog)")
    c.add_argument("--order", type=int, help="truncation order for every entry "
                   "(default: each entry's own order, else $QVERIFY_DEFAULT_ORDER or 200)")
    c.add_argument("--only", nargs="+", metavar="NAME", help="verify only these entries")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")
    c.add_argument("--json", metavar="PATH", help="write a JSON report array")
    c.set_defaults(func=cmd_check)

    for name, fn, helptext in (("expand", cmd_expand, "print the coefficients of an expression"),
                               ("ct", cmd_ct, "print the constant term in z of an expression")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("expr")
        s.add_argument("--order", type=int, help="truncation order (default $QVERIFY_DEFAULT_ORDER or 200)")
        s.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
