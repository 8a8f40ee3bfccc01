"""Larger exact sweeps than the CLI defaults, with timings.

    python scripts/sweep.py --max-k 13 --max-j 15
"""

import argparse
import time

from hyperflow.verify import run_suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=11)
    parser.add_argument("--max-j", type=int, default=13, help="odd coordinate index bound")
    parser.add_argument("--order", type=int, default=16)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    plan = [
        ("commute", {"max_k": args.max_k, "max_l": args.max_k, "max_j": args.max_j}),
        ("lambda", {"max_k": args.max_k, "max_j": args.max_j}),
        ("closed-forms", {"max_k": args.max_k, "max_j": args.max_j}),
        ("series", {"max_k": args.max_k, "order": max(args.order, args.max_k)}),
        ("j1-specials", {"max_k": 2 * args.max_k + 1}),
    ]
    start = time.perf_counter()
    ok = True
    for suite, bounds in plan:
        report = run_suite(suite, bounds, args.workers)
        print(report.text())
        ok &= report.passed
    print(f"total {time.perf_counter() - start:.2f}s, {'all pass' if ok else 'FAILURES'}")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
