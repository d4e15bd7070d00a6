"""Symmetric integer lattices: root systems, surface models, kernel splittings.

The symmetric side of the story: recognizing A/D/E root systems inside
definite integer lattices by complete short-vector enumeration, checking
that the charge kernel of a fibration pseudolattice splits as a rank-``ell``
root lattice plus the point-like radical, building the rank-one-higher
hyperbolic comparison model with its canonical vector, producing integral
fundamental-weight witnesses, and assembling the rational surface basis
whose Gram matrix exhibits the half-integer canonical-class entries and the
Cartan block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._intlin import (
    complete_unimodular,
    determinant_integer,
    integer_kernel,
    matrix_vector,
    primitive_vector,
    rank_integer,
    solve_integer,
    solve_rational,
    symmetric_signature,
    transpose,
)
from .pseudolattice import (
    ChargeMap,
    Pseudolattice,
    PseudolatticeError,
    del_pezzo_gram,
    neron_severi,
    point_like,
    serre,
)

IntMatrix = List[List[int]]
IntVector = List[int]
FracVector = Tuple[Fraction, ...]


class RootLatticeError(ValueError):
    """Raised when an input violates a root-lattice assumption."""


@dataclass(frozen=True)
class IntLattice:
    """A finite-rank lattice with a symmetric integer bilinear form."""

    gram: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise RootLatticeError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise RootLatticeError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def radical_rank(self) -> int:
        return len(integer_kernel([list(row) for row in self.gram]))

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return sum(
            u[i] * self.gram[i][j] * v[j]
            for i in range(self.rank)
            for j in range(self.rank)
            if self.gram[i][j]
        )

    def norm(self, v: Sequence[int]) -> int:
        return self.pairing(v, v)

    def negated(self) -> "IntLattice":
        return IntLattice(tuple(tuple(-x for x in row) for row in self.gram))

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.gram]


# ---------------------------------------------------------------------------
# short vectors


def _ldl(gram: Sequence[Sequence[int]]) -> Optional[Tuple[List[List[Fraction]], List[Fraction]]]:
    """Unit lower triangular L and positive diagonal D with G = L D L^T.

    Returns None when the form is not positive definite.
    """
    n = len(gram)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        d = Fraction(gram[j][j]) - sum(diag[k] * lower[j][k] ** 2 for k in range(j))
        if d <= 0:
            return None
        diag[j] = d
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            val = Fraction(gram[i][j]) - sum(
                diag[k] * lower[i][k] * lower[j][k] for k in range(j)
            )
            lower[i][j] = val / d
    return lower, diag


def short_vectors(lattice: IntLattice, bound: int) -> List[IntVector]:
    """All nonzero vectors of absolute norm at most ``bound``, both signs.

    The lattice must be definite (either sign); enumeration is the standard
    exact triangular-decomposition sweep and is complete.  Vectors are
    returned sorted lexicographically.
    """
    decomposition = _ldl(lattice.gram)
    if decomposition is None:
        decomposition = _ldl(lattice.negated().gram)
        if decomposition is None:
            raise RootLatticeError("short vectors require a definite lattice")
    lower, diag = decomposition
    n = lattice.rank
    found: List[IntVector] = []
    vector = [0] * n

    def sweep(level: int, remaining: Fraction) -> None:
        if level < 0:
            if any(vector):
                found.append(list(vector))
            return
        center = -sum(lower[j][level] * vector[j] for j in range(level + 1, n))
        spread = math.sqrt(float(remaining / diag[level])) + 1
        low = math.ceil(float(center) - spread)
        high = math.floor(float(center) + spread)
        for t in range(low, high + 1):
            used = diag[level] * (t - center) ** 2
            if used <= remaining:
                vector[level] = t
                sweep(level - 1, remaining - used)
        vector[level] = 0

    sweep(n - 1, Fraction(bound))
    return sorted(found)


# ---------------------------------------------------------------------------
# Dynkin classification


def cartan_matrix(letter: str, rank: int) -> IntMatrix:
    """Cartan matrix of a simply-laced type in the fixed node order.

    A: a chain.  D: a chain of ``rank - 2`` nodes with two extra nodes
    attached to its last member.  E: a chain of ``rank - 1`` nodes with the
    last node attached to node 2.
    """
    if rank < 1:
        raise RootLatticeError("rank must be positive")
    if letter == "A":
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif letter == "D":
        if rank < 4:
            raise RootLatticeError("type D needs rank at least 4")
        edges = [(i, i + 1) for i in range(rank - 3)]
        edges += [(rank - 3, rank - 2), (rank - 3, rank - 1)]
    elif letter == "E":
        if rank not in (6, 7, 8):
            raise RootLatticeError("type E needs rank 6, 7, or 8")
        edges = [(i, i + 1) for i in range(rank - 2)] + [(2, rank - 1)]
    else:
        raise RootLatticeError(f"unknown type letter {letter!r}")
    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        cartan[i][i] = 2
    for i, j in edges:
        cartan[i][j] = cartan[j][i] = -1
    return cartan


def _walk_branch(start: int, origin: int, adjacency: Dict[int, set]) -> List[int]:
    branch = [start]
    previous, current = origin, start
    while True:
        onward = [v for v in adjacency[current] if v != previous]
        if not onward:
            return branch
        if len(onward) > 1:
            raise RootLatticeError("Dynkin graph has a second branch point")
        previous, current = current, onward[0]
        branch.append(current)


def _classify_component(
    nodes: List[int], adjacency: Dict[int, set], roots: Sequence[Tuple[int, ...]]
) -> Tuple[str, int, List[int]]:
    """Type letter, rank, and the canonical ordering of the component nodes."""
    n = len(nodes)
    degrees = {v: len(adjacency[v]) for v in nodes}
    if any(d > 3 for d in degrees.values()):
        raise RootLatticeError("Dynkin graph has a node of degree above 3")
    branch_points = [v for v in nodes if degrees[v] == 3]
    if len(branch_points) > 1:
        raise RootLatticeError("Dynkin graph has two branch points")
    if not branch_points:
        if n == 1:
            return "A", 1, nodes
        ends = [v for v in nodes if degrees[v] == 1]
        start = min(ends, key=lambda v: roots[v])
        other = next(v for v in adjacency[start])
        order = [start] + _walk_branch(other, start, adjacency)
        if len(order) != n:
            raise RootLatticeError("Dynkin component is not a tree")
        return "A", n, order
    center = branch_points[0]
    branches = [
        _walk_branch(neighbor, center, adjacency)
        for neighbor in sorted(
            adjacency[center], key=lambda v: (len(_walk_branch(v, center, adjacency)), roots[v])
        )
    ]
    if 1 + sum(len(b) for b in branches) != n:
        raise RootLatticeError("Dynkin component is not a tree")
    lengths = [len(b) for b in branches]
    if lengths[0] != 1:
        raise RootLatticeError("branched Dynkin graph lacks a short arm")
    if lengths[1] == 1:
        # Type D: the two short arms trail the chain through the long arm.
        long_arm = branches[2]
        order = list(reversed(long_arm)) + [center, branches[0][0], branches[1][0]]
        return "D", n, order
    if (lengths[1], lengths[2]) in ((2, 2), (2, 3), (2, 4)) and n in (6, 7, 8):
        middle, long_arm = branches[1], branches[2]
        order = [middle[1], middle[0], center] + long_arm + [branches[0][0]]
        return "E", n, order
    raise RootLatticeError("Dynkin graph is outside the A/D/E catalog")


@dataclass(frozen=True)
class RootSystemReport:
    """Identification of the root system of a definite lattice."""

    sign: int  # +1 if the input was positive definite, -1 if it was negated
    abs_det: int
    root_count: int
    cartan: Tuple[Tuple[int, ...], ...]  # in the canonical node order
    dynkin_type: str  # e.g. "E6" or "A2+A1"
    edges: Tuple[Tuple[int, int], ...]
    simple_roots: Tuple[Tuple[int, ...], ...]  # input coordinates, canonical order

    def to_json(self) -> Dict[str, object]:
        return {
            "sign": self.sign,
            "abs_det": self.abs_det,
            "root_count": self.root_count,
            "cartan": [list(row) for row in self.cartan],
            "dynkin_type": self.dynkin_type,
            "edges": [list(e) for e in self.edges],
            "simple_roots": [list(r) for r in self.simple_roots],
        }


def root_system_identify(lattice: IntLattice) -> RootSystemReport:
    """Identify the A/D/E root system spanned by the norm-2 vectors.

    The form is flipped to positive definite if necessary; simple roots are
    the positive roots (for a deterministic generic functional) that are not
    sums of two positive roots; the resulting Dynkin graph is matched
    against the A/D/E catalog and returned in a canonical node order.
    """
    if lattice.radical_rank() > 0:
        raise RootLatticeError("quotient the radical before identification")
    pos, neg, zero = symmetric_signature([list(r) for r in lattice.gram])
    if zero or (pos and neg):
        raise RootLatticeError("root systems live in definite lattices")
    sign = 1 if neg == 0 else -1
    work = lattice if sign == 1 else lattice.negated()
    roots = [v for v in short_vectors(work, 2) if work.norm(v) == 2]
    if not roots or rank_integer(roots) < lattice.rank:
        raise RootLatticeError("norm-2 vectors do not span the lattice")
    radius = max(abs(x) for v in roots for x in v)
    base = 2 * radius + 1
    weights = [base**j for j in range(lattice.rank)]

    def height(v: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(weights, v))

    positive = {tuple(v) for v in roots if height(v) > 0}
    simple = [
        v
        for v in sorted(positive)
        if not any(
            tuple(a - b for a, b in zip(v, other)) in positive
            for other in positive
            if other != v
        )
    ]
    if len(simple) != lattice.rank:
        raise RootLatticeError(
            f"extracted {len(simple)} simple roots in rank {lattice.rank}"
        )
    adjacency: Dict[int, set] = {i: set() for i in range(len(simple))}
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            value = work.pairing(simple[i], simple[j])
            if value == -1:
                adjacency[i].add(j)
                adjacency[j].add(i)
            elif value != 0:
                raise RootLatticeError("simple-root pairings are not simply laced")

    # split into connected components and classify each
    seen: set = set()
    components: List[Tuple[str, int, List[int]]] = []
    for start in range(len(simple)):
        if start in seen:
            continue
        stack, nodes = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            nodes.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        local = {v: adjacency[v] & set(nodes) for v in nodes}
        components.append(_classify_component(sorted(nodes), local, simple))
    components.sort(key=lambda c: (-c[1], c[0], [simple[i] for i in c[2]]))
    order = [i for _, _, comp in components for i in comp]
    ordered = [simple[i] for i in order]
    cartan = [[work.pairing(u, v) for v in ordered] for u in ordered]

    expected: IntMatrix = []
    offset = 0
    for letter, rank, _ in components:
        block = cartan_matrix(letter, rank)
        for i in range(rank):
            row = [0] * offset + block[i] + [0] * (lattice.rank - offset - rank)
            expected.append(row)
        offset += rank
    if cartan != expected:
        raise RootLatticeError("canonical ordering failed to match the catalog")
    edges = tuple(
        (i, j)
        for i in range(len(cartan))
        for j in range(i + 1, len(cartan))
        if cartan[i][j] == -1
    )
    return RootSystemReport(
        sign=sign,
        abs_det=abs(determinant_integer([list(r) for r in lattice.gram])),
        root_count=len(roots),
        cartan=tuple(tuple(row) for row in cartan),
        dynkin_type="+".join(f"{letter}{rank}" for letter, rank, _ in components),
        edges=edges,
        simple_roots=tuple(tuple(r) for r in ordered),
    )


# ---------------------------------------------------------------------------
# hyperbolic model


@dataclass(frozen=True)
class HyperbolicModelReport:
    """The rank-(ell + 1) hyperbolic lattice with its canonical vector."""

    ell: int
    gram: Tuple[Tuple[int, ...], ...]  # diag(1, -1, ..., -1)
    canonical: Tuple[int, ...]  # the vector (-3, 1, ..., 1)
    canonical_norm: int  # must equal 9 - ell
    orthogonal: RootSystemReport  # root system of the orthogonal complement
    ambient_simple_roots: Tuple[Tuple[int, ...], ...]
    passed: bool

    def to_json(self) -> Dict[str, object]:
        return {
            "ell": self.ell,
            "gram": [list(r) for r in self.gram],
            "canonical": list(self.canonical),
            "canonical_norm": self.canonical_norm,
            "orthogonal": self.orthogonal.to_json(),
            "ambient_simple_roots": [list(r) for r in self.ambient_simple_roots],
            "passed": self.passed,
        }


def hyperbolic_model(ell: int) -> HyperbolicModelReport:
    """Build diag(1, -1, ..., -1) with k = (-3, 1, ..., 1) and identify k-perp.

    The canonical vector has norm 9 - ell, and its orthogonal complement
    must identify as the rank-``ell`` exceptional root system.
    """
    n = ell + 1
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = 1
    for i in range(1, n):
        gram[i][i] = -1
    k = [-3] + [1] * ell
    lattice = IntLattice(tuple(tuple(r) for r in gram))
    norm = lattice.norm(k)
    functional = matrix_vector(gram, k)
    kernel = integer_kernel([functional])
    restricted = [[lattice.pairing(u, v) for v in kernel] for u in kernel]
    report = root_system_identify(IntLattice(tuple(tuple(r) for r in restricted)))
    ambient_roots = tuple(
        tuple(
            sum(root[j] * kernel[j][i] for j in range(len(kernel)))
            for i in range(n)
        )
        for root in report.simple_roots
    )
    passed = (
        norm == 9 - ell
        and report.dynkin_type == f"E{ell}"
        and report.abs_det == abs(determinant_integer([list(r) for r in report.cartan]))
    )
    return HyperbolicModelReport(
        ell=ell,
        gram=tuple(tuple(r) for r in gram),
        canonical=tuple(k),
        canonical_norm=norm,
        orthogonal=report,
        ambient_simple_roots=ambient_roots,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# fundamental weights


def fundamental_weights(
    ambient: IntLattice, simple_roots: Sequence[Sequence[int]]
) -> List[IntVector]:
    """Integral vectors w_i with <w_i, beta_j> = delta_ij, or a hard error.

    The roots must be primitive, distinct, and linearly independent.  A
    missing integral solution is reported as an error rather than papered
    over, since downstream claims depend on existence.
    """
    roots = [list(r) for r in simple_roots]
    if len({tuple(r) for r in roots}) != len(roots):
        raise RootLatticeError("duplicate simple roots")
    for r in roots:
        if not any(r):
            raise RootLatticeError("zero vector is not a root")
        if primitive_vector(r) not in (r, [-x for x in r]):
            raise RootLatticeError(f"root {r} is not primitive")
    if rank_integer(roots) != len(roots):
        raise RootLatticeError("simple roots are linearly dependent")
    rows = [matrix_vector([list(g) for g in ambient.gram], r) for r in roots]
    weights: List[IntVector] = []
    for i in range(len(roots)):
        rhs = [1 if j == i else 0 for j in range(len(roots))]
        solution = solve_integer(rows, rhs)
        if solution is None:
            raise RootLatticeError(
                f"no integral fundamental weight for root index {i}"
            )
        weights.append(solution)
    return weights


# ---------------------------------------------------------------------------
# kernel decomposition


@dataclass(frozen=True)
class KernelDecompositionReport:
    """Splitting of a charge kernel into a root factor and the radical."""

    kernel_rank: int
    restricted_gram: Tuple[Tuple[int, ...], ...]
    radical_rank: int
    radical_generator: Tuple[int, ...]  # kernel coordinates
    radical_is_point: bool
    quotient_gram: Tuple[Tuple[int, ...], ...]
    quotient_det: int
    root_report: RootSystemReport
    orthogonal: bool
    passed: bool
    failure: Optional[str]

    def to_json(self) -> Dict[str, object]:
        return {
            "kernel_rank": self.kernel_rank,
            "radical_rank": self.radical_rank,
            "radical_generator": list(self.radical_generator),
            "radical_is_point": self.radical_is_point,
            "quotient_det": self.quotient_det,
            "root_system": self.root_report.to_json(),
            "orthogonal": self.orthogonal,
            "passed": self.passed,
            "failure": self.failure,
        }


def kernel_decomposition(
    lattice: Pseudolattice, charge: ChargeMap
) -> KernelDecompositionReport:
    """Verify that the charge kernel splits as root system plus radical.

    Checks: the point-like vector is in the kernel and spans the radical of
    the restricted (necessarily symmetric) form; the quotient by the radical
    is a definite lattice identified as E6/E7/E8 whose determinant matches
    the Cartan determinant; the two factors pair to zero on both sides.
    """
    kernel = integer_kernel(charge.matrix())
    p = point_like(lattice)
    failure: Optional[str] = None
    if not charge.charge(p).is_zero():
        raise PseudolatticeError("point-like vector carries nonzero charge")
    restricted = [[lattice.pairing(u, v) for v in kernel] for u in kernel]
    for i in range(len(kernel)):
        for j in range(i):
            if restricted[i][j] != restricted[j][i]:
                raise PseudolatticeError("restricted form is not symmetric")
    radical = integer_kernel(restricted)
    radical_ok = len(radical) == 1
    generator = radical[0] if radical_ok else [0] * len(kernel)
    if radical_ok and next((x for x in generator if x), 1) < 0:
        generator = [-x for x in generator]
    ambient_radical = [
        sum(generator[j] * kernel[j][i] for j in range(len(kernel)))
        for i in range(lattice.rank)
    ]
    radical_is_point = radical_ok and ambient_radical in (p, [-x for x in p])
    if not radical_ok:
        failure = f"radical has rank {len(radical)}, expected 1"
    elif not radical_is_point:
        failure = "radical generator is not the point-like vector"

    completion = complete_unimodular(generator) if radical_ok else None
    if completion is not None:
        m = len(kernel)
        full = [
            [
                sum(
                    completion[a][i] * restricted[a][b] * completion[b][j]
                    for a in range(m)
                    for b in range(m)
                )
                for j in range(m)
            ]
            for i in range(m)
        ]
        quotient = [row[1:] for row in full[1:]]
    else:
        quotient = [row[1:] for row in restricted[1:]]
    quotient_det = determinant_integer([list(r) for r in quotient])
    root_report = root_system_identify(IntLattice(tuple(tuple(r) for r in quotient)))
    cartan_det = abs(
        determinant_integer([list(r) for r in root_report.cartan])
    )
    if abs(quotient_det) != cartan_det and failure is None:
        failure = (
            f"quotient determinant {quotient_det} differs from the Cartan "
            f"determinant {cartan_det}"
        )
    orthogonal = all(
        lattice.pairing(p, v) == 0 and lattice.pairing(v, p) == 0 for v in kernel
    )
    if not orthogonal and failure is None:
        failure = "factors are not mutually orthogonal"
    expected_type = f"E{len(kernel) - 1}"
    if root_report.dynkin_type != expected_type and failure is None:
        failure = (
            f"quotient identified as {root_report.dynkin_type}, "
            f"expected {expected_type}"
        )
    return KernelDecompositionReport(
        kernel_rank=len(kernel),
        restricted_gram=tuple(tuple(r) for r in restricted),
        radical_rank=len(radical),
        radical_generator=tuple(generator),
        radical_is_point=radical_is_point,
        quotient_gram=tuple(tuple(r) for r in quotient),
        quotient_det=quotient_det,
        root_report=root_report,
        orthogonal=orthogonal,
        passed=failure is None,
        failure=failure,
    )


# ---------------------------------------------------------------------------
# the rational surface basis


def _fraction_pairing(
    gram: Sequence[Sequence[int]], u: Sequence[Fraction], v: Sequence[Fraction]
) -> Fraction:
    total = Fraction(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj and gram[i][j]:
                total += ui * gram[i][j] * vj
    return total


@dataclass(frozen=True)
class SurfaceBasisReport:
    """The rational basis (unit, canonical, roots, point) and its Gram."""

    d: int
    basis: Tuple[FracVector, ...]  # rows: unit, canonical lift, roots, point
    gram: Tuple[FracVector, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    unit_canonical: Fraction  # must be -d/2
    canonical_unit: Fraction  # must be +d/2
    canonical_self: Fraction  # computed self-pairing of the canonical lift
    corner_checks: bool  # <unit, point> = <point, unit> = 1, <point, point> = 0
    cross_zero: bool  # root block decoupled from unit/canonical/point
    passed: bool

    def to_json(self) -> Dict[str, object]:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "d": self.d,
            "basis": [[frac(x) for x in row] for row in self.basis],
            "gram": [[frac(x) for x in row] for row in self.gram],
            "cartan": [list(r) for r in self.cartan],
            "unit_canonical": frac(self.unit_canonical),
            "canonical_unit": frac(self.canonical_unit),
            "canonical_self": frac(self.canonical_self),
            "corner_checks": self.corner_checks,
            "cross_zero": self.cross_zero,
            "passed": self.passed,
        }


def kuznetsov_basis(d: int) -> SurfaceBasisReport:
    """Assemble the rational basis (unit, canonical, root lifts, point).

    In the reference surface model of degree ``d``: the unit class, the
    canonical-class lift k - (d/2) p, integral lifts of the simple roots of
    the canonical-orthogonal inside the quotient lattice (shifted by point
    multiples to decouple them from the unit), and the point class.  The
    Gram must show the +-d/2 canonical entries, the Cartan block, and the
    unit corner entries.
    """
    if d not in (1, 2, 3):
        raise ValueError(f"no reference surface model for degree {d}")
    ell = 9 - d
    model = Pseudolattice(tuple(tuple(r) for r in del_pezzo_gram(ell)))
    n = model.rank
    s = serre(model)
    p = point_like(model)
    unit = [1] + [0] * (n - 1)
    k = [a - b for a, b in zip(matrix_vector(s, unit), unit)]

    quotient = neron_severi(model)
    reps = [list(r) for r in quotient.representatives]
    columns = transpose([p] + reps)
    k_coords = solve_integer(columns, k)
    if k_coords is None:
        raise RootLatticeError("canonical class escapes the point-orthogonal")
    k_ns = k_coords[1:]

    ns_gram = quotient.gram_lists()
    functional = matrix_vector(ns_gram, k_ns)
    kernel = integer_kernel([functional])
    ns_lattice = IntLattice(tuple(tuple(r) for r in ns_gram))
    restricted = [[ns_lattice.pairing(u, v) for v in kernel] for u in kernel]
    report = root_system_identify(IntLattice(tuple(tuple(r) for r in restricted)))
    if report.dynkin_type != f"E{ell}":
        raise RootLatticeError(
            f"canonical-orthogonal identified as {report.dynkin_type}"
        )

    roots_ambient: List[IntVector] = []
    for root in report.simple_roots:
        ns_vector = [
            sum(root[j] * kernel[j][i] for j in range(len(kernel)))
            for i in range(len(ns_gram))
        ]
        ambient = [
            sum(ns_vector[j] * reps[j][i] for j in range(len(reps)))
            for i in range(n)
        ]
        shift = model.pairing(unit, ambient)  # <unit, p> = 1, so subtract
        roots_ambient.append([a - shift * b for a, b in zip(ambient, p)])

    half = Fraction(d, 2)
    canonical = tuple(Fraction(a) - half * b for a, b in zip(k, p))
    basis: List[FracVector] = [tuple(Fraction(x) for x in unit), canonical]
    basis += [tuple(Fraction(x) for x in r) for r in roots_ambient]
    basis.append(tuple(Fraction(x) for x in p))

    gram_rows = [list(row) for row in model.gram]
    gram = tuple(
        tuple(_fraction_pairing(gram_rows, u, v) for v in basis) for u in basis
    )
    last = len(basis) - 1
    unit_canonical = gram[0][1]
    canonical_unit = gram[1][0]
    canonical_self = gram[1][1]
    corner_checks = (
        gram[0][0] == 1
        and gram[0][last] == 1
        and gram[last][0] == 1
        and gram[last][last] == 0
    )
    cartan_block = [
        [gram[2 + i][2 + j] for j in range(ell)] for i in range(ell)
    ]
    cartan_ok = cartan_block == [[Fraction(x) for x in row] for row in report.cartan]
    cross = True
    for idx in range(2, 2 + ell):
        for other in (0, 1, last):
            if gram[idx][other] != 0 or gram[other][idx] != 0:
                cross = False
    passed = (
        unit_canonical == -half
        and canonical_unit == half
        and corner_checks
        and cartan_ok
        and cross
        and gram[1][last] == 0
        and gram[last][1] == 0
    )
    return SurfaceBasisReport(
        d=d,
        basis=tuple(basis),
        gram=gram,
        cartan=report.cartan,
        unit_canonical=unit_canonical,
        canonical_unit=canonical_unit,
        canonical_self=canonical_self,
        corner_checks=corner_checks,
        cross_zero=cross,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# rational splitting


@dataclass(frozen=True)
class SplittingReport:
    """A rational complement of the charge kernel, orthogonal modulo the point."""

    kernel_rank: int
    complement: Tuple[FracVector, FracVector]  # spans a section of the charge map
    coefficients: Tuple[Fraction, ...]  # point multiple aligning each kernel vector
    passed: bool
    witness: Optional[int]  # kernel index of the first failing vector

    def to_json(self) -> Dict[str, object]:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "kernel_rank": self.kernel_rank,
            "complement": [[frac(x) for x in row] for row in self.complement],
            "coefficients": [frac(c) for c in self.coefficients],
            "passed": self.passed,
            "witness": self.witness,
        }


def rational_splitting(
    lattice: Pseudolattice, charge: ChargeMap
) -> SplittingReport:
    """Split the rational lattice as charge kernel plus a two-dimensional
    section, orthogonal modulo the point-like vector.

    The first complement generator is a coordinate vector with nonzero rank
    and nonzero charge; the second is a coordinate vector of independent
    charge corrected by a rational kernel combination so that every kernel
    vector w satisfies <w, u> = c_w <p, u> and <u, w> = c_w <u, p> for one
    coefficient c_w and both generators u.  Then w - c_w p is honestly
    orthogonal to the complement on both sides, which is the precise sense
    in which the splitting is orthogonal modulo p.
    """
    p = point_like(lattice)
    if lattice.pairing(p, p) != 0:
        raise PseudolatticeError("point-like vector has nonzero self-pairing")
    n = lattice.rank
    basis_vectors = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for v in basis_vectors:
        if lattice.pairing(p, v) != lattice.pairing(v, p):
            raise PseudolatticeError(
                "pairings against the point-like vector disagree"
            )
    kernel = integer_kernel(charge.matrix())
    gram_rows = [list(row) for row in lattice.gram]

    unit = next(
        (
            v
            for v in basis_vectors
            if lattice.pairing(p, v) != 0 and not charge.charge(v).is_zero()
        ),
        None,
    )
    if unit is None:
        raise PseudolatticeError("no coordinate vector has nonzero rank")
    unit_charge = charge.charge(unit)
    section = next(
        (
            v
            for v in basis_vectors
            if unit_charge.m * charge.charge(v).n
            - unit_charge.n * charge.charge(v).m
            != 0
        ),
        None,
    )
    if section is None:
        raise PseudolatticeError("charge map has rank below 2")
    if rank_integer(kernel + [unit, section]) != n:
        raise PseudolatticeError("kernel and complement do not span")

    rank_unit = lattice.pairing(p, unit)
    coefficients = [Fraction(lattice.pairing(w, unit), rank_unit) for w in kernel]
    # correct the section by a kernel combination killing the defects
    defects = [
        Fraction(lattice.pairing(w, section)) - c * lattice.pairing(p, section)
        for w, c in zip(kernel, coefficients)
    ]
    restricted = [
        [Fraction(lattice.pairing(u, v)) for v in kernel] for u in kernel
    ]
    correction = solve_rational(restricted, [-delta for delta in defects])
    if correction is None:
        raise PseudolatticeError("section defects escape the restricted form")
    corrected = [
        Fraction(x)
        + sum(
            (a * kernel[j][i] for j, a in enumerate(correction)), Fraction(0)
        )
        for i, x in enumerate(section)
    ]

    frac_p = [Fraction(x) for x in p]
    generators = (
        tuple(Fraction(x) for x in unit),
        tuple(corrected),
    )
    witness: Optional[int] = None
    for index, (w, c) in enumerate(zip(kernel, coefficients)):
        frac_w = [Fraction(x) for x in w]
        for u in generators:
            left = _fraction_pairing(gram_rows, frac_w, u)
            right = _fraction_pairing(gram_rows, list(u), frac_w)
            if left != c * _fraction_pairing(gram_rows, frac_p, list(u)) or (
                right != c * _fraction_pairing(gram_rows, list(u), frac_p)
            ):
                witness = index
                break
        if witness is not None:
            break
    return SplittingReport(
        kernel_rank=len(kernel),
        complement=generators,
        coefficients=tuple(coefficients),
        passed=witness is None,
        witness=witness,
    )
