"""Print the singular-fiber tables of the catalog fibrations.

For each degree the exact model's table (the cuspidal/star fiber, the
nodal place, and the fiber at infinity) is printed next to the perturbed
model's fully split nodal table.

Usage::

    python3 scripts/fiber_report.py [--epsilon NUM/DEN]
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from dpmirror.weierstrass import catalog, fiber_configuration


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", default="1/100",
                        help="perturbation parameter as num/den")
    args = parser.parse_args()
    num, _, den = args.epsilon.partition("/")
    epsilon = Fraction(int(num), int(den) if den else 1)

    for d in (3, 2, 1):
        print(f"degree d = {d}")
        for title, model in (
            ("exact", catalog(d)),
            (f"perturbed (eps = {epsilon})", catalog(d, epsilon)),
        ):
            table = fiber_configuration(model)
            cells = ", ".join(
                f"{p.place_string()}: {p.fiber.label}"
                + (f" x{p.count}" if p.count > 1 else "")
                for p in table.placements
            )
            print(f"  {title:28s} {cells}")
            print(f"  {'':28s} euler total = {table.euler_total()}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
