"""Wall-clock cost of verifying selected entries as the truncation order grows.

    python scripts/order_scaling.py AU-conjecture asy-RR --orders 100 200 400 800
"""
import argparse
import time

from qverify.cli import bundled_catalog_text
from qverify.dsl import parse, verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=["RR1", "AU-conjecture", "asy-RR"])
    ap.add_argument("--orders", nargs="+", type=int, default=[100, 200, 400, 800])
    ns = ap.parse_args()
    entries = {e.name: e for e in parse(bundled_catalog_text())}
    print("entry".ljust(24) + "".join(f"{N:>12}" for N in ns.orders))
    for name in ns.names:
        cells = []
        for N in ns.orders:
            t0 = time.perf_counter()
            r = verify(entries[name], N)
            dt = time.perf_counter() - t0
            cells.append(f"{dt:10.3f}s" + (" " if r.ok else "!"))
        print(name.ljust(24) + "".join(cells))
    print("times in seconds; '!' marks a non-PASS result")


if __name__ == "__main__":
    main()
