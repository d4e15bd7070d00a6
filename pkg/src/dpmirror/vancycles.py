"""The vanishing-cycle pipeline for perturbed Weierstrass fibrations.

From an explicit perturbed model: order the critical values by the
clockwise sweep, track fiber roots along straight arcs to find the
colliding pair for each, trace the vanishing arc through the collision,
integrate dx/y over it against the period lattice of the base fiber, and
solve for the integer homology class of every vanishing cycle.  The
algebraic layer (intersection pairing, Seifert Gram matrix, Dehn twists,
monodromy, the cycle at infinity) is re-exported from the homology module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactpoly import UniPoly, poly_gcd
from .homology import (
    HomologyClass,
    SL2Matrix,
    dehn_twist,
    h1_pair,
    infinity_cycle,
    reference_vanishing_classes,
    seifert_gram,
    total_monodromy,
)
from .pathnum import (
    CPoly,
    NumericsError,
    PathPolyline,
    TrackedRoots,
    all_roots,
    continue_roots,
    elliptic_integral,
    period_lattice,
)
from .weierstrass import WeierstrassModel, catalog, reference_nodal_place

__all__ = [
    "HomologyClass",
    "SL2Matrix",
    "VanishingData",
    "critical_values_ordered",
    "dehn_twist",
    "h1_pair",
    "infinity_cycle",
    "reference_vanishing_classes",
    "render_delta_svg",
    "seifert_gram",
    "total_monodromy",
    "vanishing_classes",
]

ARC_GUARD = 1e-3  # minimal distance of other critical values from an arc
RESIDUAL_BOUND = 1e-6  # integer period solve must certify below this
RETRY_FACTOR = Fraction(18, 17)  # epsilon bump when an arc guard trips


def _fiber_family(model: WeierstrassModel):
    a_poly, b_poly = model.a, model.b

    def family(lam: complex) -> CPoly:
        return CPoly(
            (
                b_poly.evaluate_complex(lam),
                a_poly.evaluate_complex(lam),
                0j,
                1 + 0j,
            )
        )

    return family


def critical_values_ordered(
    model: WeierstrassModel, anchor: Optional[complex] = None
) -> List[complex]:
    """Critical values of the fibration, in clockwise sweep order.

    The values are the roots of the separable invariant 4a^3 + 27b^2.  The
    root nearest ``anchor`` (largest modulus when no anchor is given) comes
    first; the rest follow by strictly decreasing argument taken in the
    half-open length-2pi interval below the first root's argument, with
    ties broken by increasing modulus.
    """
    disc = model.discriminant_scale()
    if disc.degree() < 1:
        raise NumericsError("the discriminant scale is constant")
    if poly_gcd(disc, disc.derivative()).degree() > 0:
        raise NumericsError("the discriminant scale is not separable")
    roots = all_roots(CPoly.from_unipoly(disc))
    if anchor is None:
        first = max(roots, key=abs)
    else:
        first = min(roots, key=lambda z: abs(z - complex(anchor)))
    theta = math.atan2(first.imag, first.real)
    rest = [z for z in roots if z != first]

    def sweep_angle(z: complex) -> float:
        turn = (theta - math.atan2(z.imag, z.real)) % (2 * math.pi)
        return theta - turn

    rest.sort(key=lambda z: (-sweep_angle(z), abs(z)))
    return [first] + rest


def _segment_distance(point: complex, a: complex, b: complex) -> float:
    """Distance from ``point`` to the segment from ``a`` to ``b``."""
    span = b - a
    length_sq = span.real**2 + span.imag**2
    if length_sq == 0:
        return abs(point - a)
    t = ((point - a).real * span.real + (point - a).imag * span.imag) / length_sq
    t = min(1.0, max(0.0, t))
    return abs(point - (a + t * span))


def _vanishing_arc(tracked: TrackedRoots, pair: Tuple[int, int]) -> PathPolyline:
    """The arc through the collision: one track forward, the other back."""
    i, j = pair
    forward = [row[i] for row in tracked.roots]
    backward = [row[j] for row in tracked.roots]
    meeting = (forward[-1] + backward[-1]) / 2
    nodes: List[complex] = []
    for z in forward + [meeting] + list(reversed(backward)):
        if not nodes or nodes[-1] != z:
            nodes.append(z)
    return PathPolyline(tuple(nodes))


def _collision_pair(tracked: TrackedRoots) -> Tuple[int, int]:
    """The colliding pair, detected at the natural scale of the roots.

    The terminal-collision gate is an absolute distance test; when the
    terminal roots are numerically huge the configuration is first divided
    by an exact power of two so the gate reads at unit scale.  Division by
    a power of two is exact in floating point, so the relative geometry
    (and the ratio test) is untouched.
    """
    final = tracked.roots[-1]
    top = max(abs(z) for z in final)
    if top <= 1.0:
        return tracked.terminal_collision()
    sigma = 2.0 ** math.ceil(math.log2(top))
    scaled = TrackedRoots(
        parameters=tracked.parameters,
        roots=tuple(tuple(z / sigma for z in row) for row in tracked.roots),
        residuals=tracked.residuals,
        matchings=tracked.matchings,
    )
    return scaled.terminal_collision()


@dataclass(frozen=True)
class VanishingData:
    """Ordered critical values with their vanishing arcs and classes."""

    d: int
    epsilon: Fraction  # the perturbation actually used (after retries)
    critical_values: Tuple[complex, ...]
    arcs: Tuple[PathPolyline, ...]  # straight arcs from the base point
    colliding_pairs: Tuple[Tuple[int, int], ...]  # track indices per arc
    deltas: Tuple[PathPolyline, ...]  # vanishing arcs through each collision
    classes: Tuple[HomologyClass, ...]
    residuals: Tuple[float, ...]  # period-solve certificates
    periods: Tuple[complex, complex]  # pair dual to the class coordinates

    def __post_init__(self) -> None:
        count = len(self.critical_values)
        records = (self.arcs, self.colliding_pairs, self.deltas, self.classes,
                   self.residuals)
        if any(len(r) != count for r in records):
            raise NumericsError("per-arc records have inconsistent lengths")
        for cls in self.classes:
            if math.gcd(cls.m, cls.n) != 1:
                raise NumericsError(f"class {cls.to_pair()} is not primitive")
        for r in self.residuals:
            if not r < RESIDUAL_BOUND:
                raise NumericsError(f"period-solve residual {r:.3g} too large")

    def to_json(self) -> Dict[str, object]:
        return {
            "d": self.d,
            "epsilon": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
            "critical_values": [[z.real, z.imag] for z in self.critical_values],
            "colliding_pairs": [list(p) for p in self.colliding_pairs],
            "classes": [list(c.to_pair()) for c in self.classes],
            "residuals": list(self.residuals),
            "periods": [[z.real, z.imag] for z in self.periods],
        }


def _solve_class(
    integral: complex, periods: Tuple[complex, complex]
) -> Tuple[HomologyClass, float]:
    omega_a, omega_b = periods
    matrix = np.array(
        [[omega_a.real, omega_b.real], [omega_a.imag, omega_b.imag]]
    )
    target = np.array([integral.real, integral.imag])
    m_float, n_float = np.linalg.solve(matrix, target)
    m, n = round(float(m_float)), round(float(n_float))
    residual = abs(integral - m * omega_a - n * omega_b)
    return HomologyClass(m, n), residual


def vanishing_classes(
    d: int,
    epsilon: Fraction = Fraction(1, 100),
    max_retries: int = 5,
) -> VanishingData:
    """The ordered vanishing-cycle classes of the perturbed degree-d model.

    For every critical value in sweep order: roots are continued along the
    straight arc from the base point 0, the colliding pair defines the
    vanishing arc, and 2 int dx/y over that arc is solved against the
    period pair as m alpha + n beta with an exact-integer certificate.  The
    global orientation is calibrated so the first class is a + b; every
    other class is normalized to a positive first nonzero coordinate.  An
    arc passing within the guard distance of another critical value bumps
    epsilon by 18/17 and retries.
    """
    if d not in (1, 2, 3):
        raise ValueError(f"no reference model of degree {d}")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise NumericsError("epsilon must be positive")
    last_error: Optional[NumericsError] = None
    for _ in range(max_retries + 1):
        try:
            return _vanishing_classes_once(d, eps)
        except NumericsError as error:
            if "guard" not in str(error):
                raise
            last_error = error
            eps *= RETRY_FACTOR
    raise NumericsError(
        f"arc guard kept failing after {max_retries} epsilon bumps: {last_error}"
    )


def _vanishing_classes_once(d: int, eps: Fraction) -> VanishingData:
    model = catalog(d, eps)
    family = _fiber_family(model)
    anchor = complex(float(reference_nodal_place(d)), 0.0)
    critical = critical_values_ordered(model, anchor)
    for index, lam in enumerate(critical):
        for other in critical:
            if other == lam:
                continue
            if _segment_distance(other, 0j, lam) < ARC_GUARD:
                raise NumericsError(
                    f"arc guard: the straight arc to critical value {index} "
                    f"passes within {ARC_GUARD} of another critical value "
                    "(a different epsilon separates them)"
                )
    omega_a, omega_b = period_lattice(float(eps))
    # Orientation convention: the second reference cycle is taken with the
    # opposite orientation to the raw period pair, so the cycle collapsing
    # at the distinguished nodal place has class a + b.  The calibration
    # check below certifies the convention on every run.
    basis = (omega_a, -omega_b)
    base_cubic = family(0j)

    arcs: List[PathPolyline] = []
    pairs: List[Tuple[int, int]] = []
    deltas: List[PathPolyline] = []
    classes: List[HomologyClass] = []
    residuals: List[float] = []
    for lam in critical:
        arc = PathPolyline((0j, lam))
        tracked = continue_roots(family, arc)
        pair = _collision_pair(tracked)
        delta = _vanishing_arc(tracked, pair)
        integral = 2 * elliptic_integral(base_cubic, delta)
        cls, residual = _solve_class(integral, basis)
        if not residual < RESIDUAL_BOUND:
            raise NumericsError(
                f"period solve residual {residual:.3g} for critical value "
                f"{lam:.6g}; the integer certificate failed"
            )
        arcs.append(arc)
        pairs.append(pair)
        deltas.append(delta)
        classes.append(cls)
        residuals.append(residual)

    first = classes[0]
    if first.sign_normalized() != HomologyClass(1, 1):
        raise NumericsError(
            f"calibration failed: the first class is {first.to_pair()}, "
            "expected a + b up to sign"
        )
    normalized = [cls.sign_normalized() for cls in classes]
    return VanishingData(
        d=d,
        epsilon=eps,
        critical_values=tuple(critical),
        arcs=tuple(arcs),
        colliding_pairs=tuple(pairs),
        deltas=tuple(deltas),
        classes=tuple(normalized),
        residuals=tuple(residuals),
        periods=basis,
    )


def render_delta_svg(data: VanishingData, size: int = 640) -> str:
    """A deterministic SVG of the vanishing arcs over the branch points."""
    points = [z for delta in data.deltas for z in delta.nodes]
    if not points:
        raise NumericsError("nothing to draw")
    lo_re = min(z.real for z in points)
    hi_re = max(z.real for z in points)
    lo_im = min(z.imag for z in points)
    hi_im = max(z.imag for z in points)
    span = max(hi_re - lo_re, hi_im - lo_im, 1e-9)
    margin = 0.08 * span
    lo_re, hi_re = lo_re - margin, lo_re - margin + span + 2 * margin
    lo_im = lo_im - margin
    scale = size / (span + 2 * margin)

    def place(z: complex) -> Tuple[float, float]:
        return ((z.real - lo_re) * scale, size - (z.imag - lo_im) * scale)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
              "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e", "#393b79"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for index, delta in enumerate(data.deltas):
        color = colors[index % len(colors)]
        coords = " ".join(
            f"{x:.2f},{y:.2f}" for x, y in (place(z) for z in delta.nodes)
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
    branch_points = {delta.nodes[0] for delta in data.deltas}
    branch_points.update(delta.nodes[-1] for delta in data.deltas)
    for z in sorted(branch_points, key=lambda w: (w.real, w.imag)):
        x, y = place(z)
        parts.append(
            f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
