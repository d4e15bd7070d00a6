"""Tabulate the period comparison on both sides of the mirror.

For each degree the regularized quantum period coefficients and the
classical period coefficients of the shifted potential are printed side
by side as exact rationals, together with the recomputed shift alpha and
the comparison verdict.

Usage::

    python3 scripts/mirror_table.py [--order N]
"""

from __future__ import annotations

import argparse

from dpmirror.periods import mirror_check


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--order", type=int, default=12,
                        help="number of series coefficients to compare")
    args = parser.parse_args()

    all_passed = True
    for d in (1, 2, 3):
        report = mirror_check(d, order=args.order)
        all_passed &= report.passed
        print(f"degree d = {d}   alpha = {report.alpha}   "
              f"passed = {report.passed}")
        left = report.regularized.to_json()
        right = report.classical.to_json()
        print(f"  {'k':>3s}  {'regularized quantum':>24s}  "
              f"{'classical':>24s}")
        for k, (lhs, rhs) in enumerate(zip(left, right)):
            marker = "" if lhs == rhs else "   <-- mismatch"
            print(f"  {k:3d}  {lhs:>24s}  {rhs:>24s}{marker}")
        print()
    return 0 if all_passed else 2


if __name__ == "__main__":
    raise SystemExit(main())
