"""Run the full desk-check battery and print one verdict line per claim.

Covers the mutation-word reductions, the exact word identities, the
junction-lattice decompositions, the surface basis Grams, the torus-model
cycle sequences, and the monodromy at infinity, for every degree.  The
exit code is 0 only when every line passes.

Usage::

    python3 scripts/run_verification.py
"""

from __future__ import annotations

from fractions import Fraction

from dpmirror.homology import (
    HomologyClass,
    extended_vanishing_classes,
    infinity_cycle,
    reference_vanishing_classes,
)
from dpmirror.pseudolattice import (
    from_boundaries,
    ghs_sequences,
    ghs_target,
    standard_word_identity,
    verify_mutation_equivalence,
    word_identity,
)
from dpmirror.rootlattice import kernel_decomposition, kuznetsov_basis


def main() -> int:
    lines: list[tuple[str, bool]] = []

    for d in (1, 2, 3):
        report = verify_mutation_equivalence(d)
        lines.append((f"reduction word, degree {d}", report.passed))

    for d in (1, 2):
        lattice, basis, _ = from_boundaries(extended_vanishing_classes(d))
        first, second = standard_word_identity(d)
        lines.append(
            (f"word identity, degree {d}",
             word_identity(lattice, basis, first, second))
        )

    for d in (1, 2, 3):
        ell = 9 - d
        lattice, _, charge = from_boundaries(reference_vanishing_classes(d))
        decomposition = kernel_decomposition(lattice, charge)
        lines.append(
            (f"junction kernel E{ell} + radical, degree {d}",
             decomposition.passed
             and decomposition.root_report.dynkin_type == f"E{ell}")
        )
        surface = kuznetsov_basis(d)
        lines.append(
            (f"surface basis Gram, degree {d}",
             surface.passed and surface.unit_canonical == Fraction(-d, 2))
        )

    for ell in (6, 7, 8):
        sequence, target = ghs_sequences(ell), ghs_target(ell)
        ok = len(sequence) == len(target) and all(
            s == t or s == -t for s, t in zip(sequence, target)
        )
        lines.append((f"torus-model sequence, rank {ell}", ok))

    b = HomologyClass(0, 1)
    for d in (1, 2, 3):
        cycle = infinity_cycle(reference_vanishing_classes(d), d)
        lines.append(
            (f"infinity cycle is +/-b, degree {d}", cycle in (b, -b))
        )

    width = max(len(label) for label, _ in lines)
    failures = 0
    for label, ok in lines:
        failures += not ok
        print(f"{label:<{width}s}  {'PASS' if ok else 'FAIL'}")
    print(f"\n{len(lines) - failures}/{len(lines)} checks passed")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    raise SystemExit(main())
