"""Tests for root-system identification, surface models, and kernel splittings."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpmirror._intlin import determinant_integer, matrix_multiply, transpose
from dpmirror.homology import HomologyClass, reference_vanishing_classes
from dpmirror.pseudolattice import ChargeMap, PseudolatticeError, from_boundaries
from dpmirror.rootlattice import (
    IntLattice,
    RootLatticeError,
    cartan_matrix,
    fundamental_weights,
    hyperbolic_model,
    kernel_decomposition,
    kuznetsov_basis,
    rational_splitting,
    root_system_identify,
    short_vectors,
)

# Frozen radical generators of the charge kernels, in kernel coordinates.
RADICAL_GENERATORS = {
    3: (1, 0, 1, 1, 0, 1, -1),
    2: (1, -1, -1, 0, -1, -1, 1, 0),
    1: (1, -1, 0, -1, -1, 0, -1, 1, 0),
}

# (kernel rank, quotient determinant, type, root count) per degree.
KERNEL_FINGERPRINTS = {
    3: (7, 3, "E6", 72),
    2: (8, 2, "E7", 126),
    1: (9, 1, "E8", 240),
}


def _lattice_and_charge(d: int):
    lattice, _, charge = from_boundaries(reference_vanishing_classes(d))
    return lattice, charge


def _cartan_lattice(letter: str, rank: int) -> IntLattice:
    return IntLattice(tuple(tuple(r) for r in cartan_matrix(letter, rank)))


# ---------------------------------------------------------------------------
# short vectors


def test_short_vectors_rank_one() -> None:
    lattice = IntLattice(((2,),))
    assert short_vectors(lattice, 2) == [[-1], [1]]
    assert short_vectors(lattice, 1) == []


def test_short_vectors_negative_definite() -> None:
    lattice = IntLattice(((-2,),))
    assert short_vectors(lattice, 2) == [[-1], [1]]


def test_short_vectors_indefinite_rejected() -> None:
    lattice = IntLattice(((1, 0), (0, -1)))
    with pytest.raises(RootLatticeError, match="definite"):
        short_vectors(lattice, 2)


def test_short_vectors_exceptional_root_counts() -> None:
    for rank, count in ((6, 72), (7, 126), (8, 240)):
        lattice = _cartan_lattice("E", rank)
        roots = [v for v in short_vectors(lattice, 2) if lattice.norm(v) == 2]
        assert len(roots) == count


def test_short_vectors_include_both_signs() -> None:
    lattice = _cartan_lattice("A", 2)
    vectors = short_vectors(lattice, 2)
    assert all([-x for x in v] in vectors for v in vectors)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-2, 2), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    ),
    st.integers(1, 6),
)
def test_short_vectors_match_box_enumeration(rows: list, bound: int) -> None:
    if determinant_integer([list(r) for r in rows]) == 0:
        return
    gram = matrix_multiply(rows, transpose(rows))
    lattice = IntLattice(tuple(tuple(r) for r in gram))
    n = lattice.rank
    eigenvalues = np.linalg.eigvalsh(np.array(gram, dtype=float))
    radius = int(np.sqrt(bound / eigenvalues.min())) + 1
    box = []

    def fill(prefix: list) -> None:
        if len(prefix) == n:
            if any(prefix) and lattice.norm(prefix) <= bound:
                box.append(list(prefix))
            return
        for t in range(-radius, radius + 1):
            fill(prefix + [t])

    fill([])
    assert short_vectors(lattice, bound) == sorted(box)


# ---------------------------------------------------------------------------
# Cartan catalog


def test_cartan_matrix_shapes_and_determinants() -> None:
    for rank in range(1, 6):
        matrix = cartan_matrix("A", rank)
        assert determinant_integer(matrix) == rank + 1
    for rank in (4, 5, 6):
        assert determinant_integer(cartan_matrix("D", rank)) == 4
    for rank, det in ((6, 3), (7, 2), (8, 1)):
        matrix = cartan_matrix("E", rank)
        assert determinant_integer(matrix) == det
        assert all(matrix[i][j] == matrix[j][i] for i in range(rank) for j in range(rank))


def test_cartan_matrix_rejects_bad_input() -> None:
    with pytest.raises(RootLatticeError):
        cartan_matrix("B", 2)
    with pytest.raises(RootLatticeError):
        cartan_matrix("D", 3)
    with pytest.raises(RootLatticeError):
        cartan_matrix("E", 5)
    with pytest.raises(RootLatticeError):
        cartan_matrix("A", 0)


# ---------------------------------------------------------------------------
# root-system identification


def test_identify_single_node() -> None:
    report = root_system_identify(IntLattice(((2,),)))
    assert report.dynkin_type == "A1"
    assert report.root_count == 2
    assert report.edges == ()


def test_identify_direct_sum() -> None:
    gram = ((2, -1, 0), (-1, 2, 0), (0, 0, 2))
    report = root_system_identify(IntLattice(gram))
    assert report.dynkin_type == "A2+A1"
    assert report.root_count == 8
    assert report.abs_det == 6


def test_identify_d4() -> None:
    report = root_system_identify(_cartan_lattice("D", 4))
    assert report.dynkin_type == "D4"
    assert report.root_count == 24
    assert report.cartan == tuple(tuple(r) for r in cartan_matrix("D", 4))


def test_identify_exceptional_types() -> None:
    for rank, det, count in ((6, 3, 72), (7, 2, 126), (8, 1, 240)):
        report = root_system_identify(_cartan_lattice("E", rank))
        assert report.dynkin_type == f"E{rank}"
        assert report.abs_det == det
        assert report.root_count == count
        assert report.cartan == tuple(tuple(r) for r in cartan_matrix("E", rank))
        assert report.sign == 1
        # simple roots must reproduce the Cartan matrix inside the lattice
        lattice = _cartan_lattice("E", rank)
        recomputed = [
            [lattice.pairing(u, v) for v in report.simple_roots]
            for u in report.simple_roots
        ]
        assert recomputed == [list(r) for r in report.cartan]


def test_identify_negated_lattice() -> None:
    report = root_system_identify(_cartan_lattice("E", 6).negated())
    assert report.sign == -1
    assert report.dynkin_type == "E6"
    assert report.root_count == 72


def test_identify_rejects_radical() -> None:
    with pytest.raises(RootLatticeError, match="radical"):
        root_system_identify(IntLattice(((2, 0), (0, 0))))


def test_identify_rejects_indefinite() -> None:
    with pytest.raises(RootLatticeError, match="definite"):
        root_system_identify(IntLattice(((1, 0), (0, -1))))


def test_identify_rejects_non_spanning_roots() -> None:
    with pytest.raises(RootLatticeError, match="span"):
        root_system_identify(IntLattice(((2, 0), (0, 4))))
    with pytest.raises(RootLatticeError, match="span"):
        root_system_identify(IntLattice(((4,),)))


def test_identify_report_json() -> None:
    data = root_system_identify(_cartan_lattice("A", 2)).to_json()
    assert data["dynkin_type"] == "A2"
    assert data["root_count"] == 6
    assert data["edges"] == [[0, 1]]


def _elementary_ops(n: int, ops: list) -> list:
    """A unimodular matrix from a list of (i, j, sign) shear instructions."""
    matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, sign in ops:
        if i != j:
            for k in range(n):
                matrix[i][k] += sign * matrix[j][k]
    return matrix


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.sampled_from([-1, 1])),
        max_size=6,
    )
)
def test_identify_invariant_under_basis_change(ops: list) -> None:
    gram = cartan_matrix("D", 4)
    u = _elementary_ops(4, ops)
    conjugated = matrix_multiply(matrix_multiply(u, gram), transpose(u))
    report = root_system_identify(IntLattice(tuple(tuple(r) for r in conjugated)))
    assert report.dynkin_type == "D4"
    assert report.root_count == 24
    assert report.abs_det == 4


# ---------------------------------------------------------------------------
# hyperbolic model and fundamental weights


def test_hyperbolic_models_pass() -> None:
    for ell, det in ((6, 3), (7, 2), (8, 1)):
        report = hyperbolic_model(ell)
        assert report.passed
        assert report.canonical_norm == 9 - ell
        assert report.orthogonal.dynkin_type == f"E{ell}"
        assert report.orthogonal.abs_det == det
        assert len(report.ambient_simple_roots) == ell


def test_hyperbolic_ambient_roots_orthogonal_to_canonical() -> None:
    report = hyperbolic_model(6)
    lattice = IntLattice(report.gram)
    for root in report.ambient_simple_roots:
        assert lattice.pairing(root, report.canonical) == 0
        assert lattice.norm(root) == -2


def test_hyperbolic_model_off_catalog_rank() -> None:
    # rank five: the orthogonal complement is D5, not an E-type system
    report = hyperbolic_model(5)
    assert not report.passed
    assert report.orthogonal.dynkin_type == "D5"


def test_fundamental_weights_are_dual_to_roots() -> None:
    for ell in (6, 7, 8):
        report = hyperbolic_model(ell)
        lattice = IntLattice(report.gram)
        weights = fundamental_weights(lattice, report.ambient_simple_roots)
        assert len(weights) == ell
        for i, w in enumerate(weights):
            for j, root in enumerate(report.ambient_simple_roots):
                assert lattice.pairing(w, root) == (1 if i == j else 0)


def test_fundamental_weights_reject_bad_roots() -> None:
    lattice = IntLattice(((2, 0), (0, 2)))
    with pytest.raises(RootLatticeError, match="duplicate"):
        fundamental_weights(lattice, [[1, 0], [1, 0]])
    with pytest.raises(RootLatticeError, match="zero"):
        fundamental_weights(lattice, [[0, 0]])
    with pytest.raises(RootLatticeError, match="primitive"):
        fundamental_weights(lattice, [[2, 0]])
    with pytest.raises(RootLatticeError, match="dependent"):
        fundamental_weights(IntLattice(((2,),)), [[1], [-1]])


def test_fundamental_weights_report_missing_solution() -> None:
    # <w, root> = 2w has no integral solution equal to 1
    with pytest.raises(RootLatticeError, match="no integral fundamental weight"):
        fundamental_weights(IntLattice(((2,),)), [[1]])


# ---------------------------------------------------------------------------
# kernel decomposition


def test_kernel_decomposition_fingerprints() -> None:
    for d, (rank, det, dynkin_type, count) in KERNEL_FINGERPRINTS.items():
        lattice, charge = _lattice_and_charge(d)
        report = kernel_decomposition(lattice, charge)
        assert report.passed, report.failure
        assert report.kernel_rank == rank
        assert report.radical_rank == 1
        assert report.radical_generator == RADICAL_GENERATORS[d]
        assert report.radical_is_point
        assert report.quotient_det == det
        assert report.root_report.dynkin_type == dynkin_type
        assert report.root_report.root_count == count
        assert report.orthogonal


def test_kernel_decomposition_json() -> None:
    lattice, charge = _lattice_and_charge(3)
    data = kernel_decomposition(lattice, charge).to_json()
    assert data["passed"] is True
    assert data["failure"] is None
    assert data["root_system"]["dynkin_type"] == "E6"


def test_kernel_decomposition_rejects_charged_point() -> None:
    lattice, _ = _lattice_and_charge(3)
    n = lattice.rank
    rows = (tuple(1 if i == 0 else 0 for i in range(n)),
            tuple(1 if i == 1 else 0 for i in range(n)))
    with pytest.raises(PseudolatticeError, match="charge"):
        kernel_decomposition(lattice, ChargeMap(rows))


# ---------------------------------------------------------------------------
# the rational surface basis


def test_surface_basis_degree_3() -> None:
    report = kuznetsov_basis(3)
    assert report.passed
    assert report.unit_canonical == Fraction(-3, 2)
    assert report.canonical_unit == Fraction(3, 2)
    assert report.canonical_self == Fraction(-3)
    assert report.corner_checks
    assert report.cross_zero
    assert report.cartan == tuple(tuple(r) for r in cartan_matrix("E", 6))
    assert len(report.basis) == 9


def test_surface_basis_all_degrees() -> None:
    for d, ell in ((3, 6), (2, 7), (1, 8)):
        report = kuznetsov_basis(d)
        assert report.passed
        assert report.unit_canonical == Fraction(-d, 2)
        assert report.canonical_unit == Fraction(d, 2)
        assert report.canonical_self == Fraction(-d)
        assert len(report.basis) == ell + 3
        # Gram corners: unit against point on both sides, and a null point
        last = len(report.basis) - 1
        assert report.gram[0][last] == 1
        assert report.gram[last][0] == 1
        assert report.gram[last][last] == 0


def test_surface_basis_json_fractions() -> None:
    data = kuznetsov_basis(3).to_json()
    assert data["unit_canonical"] == "-3/2"
    assert data["canonical_unit"] == "3/2"
    assert data["passed"] is True


def test_surface_basis_rejects_unknown_degree() -> None:
    with pytest.raises(ValueError):
        kuznetsov_basis(4)


# ---------------------------------------------------------------------------
# rational splitting


def test_rational_splitting_passes_all_degrees() -> None:
    for d, (rank, _, _, _) in KERNEL_FINGERPRINTS.items():
        lattice, charge = _lattice_and_charge(d)
        report = rational_splitting(lattice, charge)
        assert report.passed
        assert report.witness is None
        assert report.kernel_rank == rank
        # the first complement generator is the first coordinate vector
        unit = report.complement[0]
        assert unit[0] == 1 and not any(unit[1:])


def test_rational_splitting_orthogonality_witnessed() -> None:
    from dpmirror._intlin import integer_kernel
    from dpmirror.pseudolattice import point_like

    lattice, charge = _lattice_and_charge(3)
    report = rational_splitting(lattice, charge)
    kernel = integer_kernel(charge.matrix())
    p = point_like(lattice)
    gram = [list(r) for r in lattice.gram]

    def pairing(u, v) -> Fraction:
        return sum(
            (Fraction(u[i]) * gram[i][j] * Fraction(v[j])
             for i in range(len(u)) for j in range(len(v))),
            Fraction(0),
        )

    for w, c in zip(kernel, report.coefficients):
        shifted = [Fraction(x) - c * y for x, y in zip(w, p)]
        for u in report.complement:
            assert pairing(shifted, u) == 0
            assert pairing(u, shifted) == 0


def test_rational_splitting_json() -> None:
    lattice, charge = _lattice_and_charge(3)
    data = rational_splitting(lattice, charge).to_json()
    assert data["passed"] is True
    assert data["witness"] is None
    assert len(data["coefficients"]) == 7


def test_rational_splitting_rejects_degenerate_inputs() -> None:
    lattice, _, charge = from_boundaries(
        [HomologyClass(1, -1), HomologyClass(0, 1)]
    )
    with pytest.raises(PseudolatticeError):
        rational_splitting(lattice, charge)


def test_rational_splitting_rejects_rank_one_charge() -> None:
    lattice, charge = _lattice_and_charge(3)
    rows = (charge.rows[0], charge.rows[0])
    with pytest.raises(PseudolatticeError, match="rank below 2"):
        rational_splitting(lattice, ChargeMap(rows))
