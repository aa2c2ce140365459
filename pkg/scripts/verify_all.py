"""Verify every entry of a catalog and print a timing table.

    python scripts/verify_all.py [catalog.qid] [--order N] [--pad P]
"""
import argparse
import sys
import time

from qverify.cli import bundled_catalog_text
from qverify.config import RunConfig
from qverify.dsl import parse, verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("catalog", nargs="?")
    ap.add_argument("--order", type=int)
    ap.add_argument("--pad", type=int)
    ns = ap.parse_args()
    cfg = RunConfig.from_env(order=ns.order, pad=ns.pad)
    text = bundled_catalog_text() if ns.catalog is None else open(ns.catalog, encoding="utf-8").read()
    entries = parse(text)
    t0 = time.perf_counter()
    bad = 0
    for e in entries:
        r = verify(e, cfg.order_for(e.order), cfg.pad)
        bad += not r.ok
        print(f"{r.ms:9.1f} ms  {r.line()}")
    print(f"{len(entries) - bad}/{len(entries)} passed in {time.perf_counter() - t0:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
