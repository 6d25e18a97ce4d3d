"""Run every computable preset and print a one-line summary per preset."""

import argparse
import time

from arclab.presets import PRESETS, OutOfScopeError, run_preset


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", type=int, nargs="*", default=[3, 4, 5, 6],
                    help="values of n for the straight-nondiagonal family")
    ap.add_argument("-v", "--verbose", action="store_true", help="list every check")
    args = ap.parse_args()
    names = [n for n, (b, _) in PRESETS.items() if b is not None]
    names += [f"straight-nondiag-n{n}" for n in args.family]
    print(f"{'preset':34s} {'verdict':8s} {'checks':>7s} {'seconds':>8s}  orders")
    for name in names:
        t = time.perf_counter()
        try:
            p = run_preset(name)
        except OutOfScopeError as e:
            print(f"{name:34s} {'skipped':8s} {'-':>7s} {'-':>8s}  {e}")
            continue
        dt = time.perf_counter() - t
        verdict = "pass" if p.passed else "FAIL"
        print(f"{name:34s} {verdict:8s} {len(p.checks):7d} {dt:8.2f}  {p.expected_orders}")
        for c in p.checks if args.verbose else p.failures():
            print(f"    [{'ok' if c.passed else 'FAIL'}] {c.name} {c.detail}")


if __name__ == "__main__":
    main()
