"""Sweep both interpolation families and write figure artifacts.

Tracks the critical values of the blended fibrations between neighboring
degrees, writes one SVG figure and one CSV trajectory dump per family,
prints the endpoint track counts, and reports the heuristic braid word
next to its exact-algebra validation verdict.

Usage::

    python3 scripts/render_interpolation.py [--outdir DIR] [--epsilon NUM/DEN]
"""

from __future__ import annotations

import argparse
import pathlib
from fractions import Fraction

from dpmirror.homology import extended_vanishing_classes
from dpmirror.interfam import (
    FamilySpec,
    render_svg,
    sweep,
    transposition_word,
)
from dpmirror.pathnum import NumericsError
from dpmirror.pseudolattice import (
    from_boundaries,
    standard_word_identity,
    word_identity,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out",
                        help="directory for SVG and CSV artifacts")
    parser.add_argument("--epsilon", default="1/100",
                        help="perturbation parameter as num/den")
    args = parser.parse_args()
    num, _, den = args.epsilon.partition("/")
    epsilon = Fraction(int(num), int(den) if den else 1)
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    for d_from, d_to in ((3, 2), (2, 1)):
        family = FamilySpec.between_degrees(d_from, d_to, epsilon)
        trajectories = sweep(family)
        stem = f"family_{d_from}_to_{d_to}"
        (outdir / f"{stem}.svg").write_text(render_svg(trajectories),
                                            encoding="utf-8")
        (outdir / f"{stem}.csv").write_text(trajectories.to_csv(),
                                            encoding="utf-8")
        last = len(trajectories.parameters) - 1
        print(f"{d_from} -> {d_to}: finite tracks "
              f"{trajectories.finite_count(0)} -> "
              f"{trajectories.finite_count(last)} of "
              f"{trajectories.track_count} on the sphere; artifacts "
              f"{stem}.svg / {stem}.csv")
        try:
            word = transposition_word(trajectories)
        except NumericsError as exc:
            print(f"  braid reading failed: {exc}")
            continue
        lattice, basis, _ = from_boundaries(extended_vanishing_classes(d_to))
        validated = word_identity(
            lattice, basis, word, standard_word_identity(d_to)[0]
        )
        verdict = "validates" if validated else "does NOT validate"
        print(f"  heuristic word: {word}")
        print(f"  exact-algebra check: {verdict} against the reference word")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
