"""Certified floating-point numerics for the fibration pipeline.

Three kernels: complete complex root finding with backward-error
certificates, root continuation along polyline paths with a separation
criterion that guarantees the track matching, and elliptic integrals
``dx / sqrt(cubic)`` whose endpoints are allowed to sit on branch points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exactpoly import UniPoly

__all__ = [
    "NumericsError",
    "CPoly",
    "PathPolyline",
    "TrackedRoots",
    "all_roots",
    "root_clusters",
    "residual",
    "continue_roots",
    "elliptic_integral",
    "period_lattice",
]


class NumericsError(ValueError):
    """Raised when a numeric kernel cannot certify its result."""


# ---------------------------------------------------------------------------
# dense complex polynomials


@dataclass(frozen=True)
class CPoly:
    """A dense complex polynomial; coefficients ascending, leading nonzero."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self) -> None:
        values = [complex(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        if not self.coeffs:
            return 0j
        return self.coeffs[-1]

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "CPoly":
        coeffs = [0j] * (p.degree() + 1)
        for exp, c in p.terms.items():
            coeffs[exp] = complex(c)
        return cls(tuple(coeffs))

    def __call__(self, z: complex) -> complex:
        value = 0j
        for c in reversed(self.coeffs):
            value = value * z + c
        return value

    def derivative(self) -> "CPoly":
        return CPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __add__(self, other: "CPoly") -> "CPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        mine = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        theirs = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return CPoly(tuple(a + b for a, b in zip(mine, theirs)))

    def __neg__(self) -> "CPoly":
        return CPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def __mul__(self, other: "CPoly | complex | float | int") -> "CPoly":
        if isinstance(other, CPoly):
            if not self.coeffs or not other.coeffs:
                return CPoly(())
            out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return CPoly(tuple(out))
        return CPoly(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CPoly":
        if n < 0:
            raise NumericsError("negative polynomial power")
        result = CPoly((1 + 0j,))
        for _ in range(n):
            result = result * self
        return result

    def trimmed(self, rel_tol: float = 1e-12) -> "CPoly":
        """Drop leading coefficients below ``rel_tol`` times the largest."""
        if not self.coeffs:
            return self
        cutoff = rel_tol * max(abs(c) for c in self.coeffs)
        values = list(self.coeffs)
        while values and abs(values[-1]) <= cutoff:
            values.pop()
        return CPoly(tuple(values))


def residual(p: CPoly, z: complex) -> float:
    """Backward-error residual: |p(z)| over max(1, sum_i |c_i| |z|^i)."""
    magnitude = abs(z)
    denom, power = 0.0, 1.0
    for c in p.coeffs:
        denom += abs(c) * power
        power *= magnitude
    return abs(p(z)) / max(1.0, denom)


# ---------------------------------------------------------------------------
# complete root finding


def all_roots(
    p: CPoly, tol: float = 1e-10, max_iterations: int = 200
) -> List[complex]:
    """All roots of ``p`` by Aberth-Ehrlich iteration with Newton polish.

    Starts from a perturbed circle of Cauchy-bound radius; the returned list
    has exactly ``degree`` entries sorted by (re, im), every one satisfying
    ``residual(p, root) < tol``.  Multiple roots come out as nearby clusters
    (see :func:`root_clusters` for the multiplicity estimate).
    """
    n = p.degree
    if n < 1:
        raise NumericsError("root finding needs degree at least 1")
    lead = p.leading
    monic = CPoly(tuple(c / lead for c in p.coeffs))
    deriv = monic.derivative()
    radius = 1.0 + max(abs(c) for c in monic.coeffs[:-1])
    z = [
        radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)
    ]
    for _ in range(max_iterations):
        if all(residual(monic, zk) < tol for zk in z):
            break
        for k in range(n):
            value = monic(z[k])
            slope = deriv(z[k])
            if slope == 0:
                z[k] += (1 + 1j) * 1e-8 * (1 + abs(z[k]))
                continue
            w = value / slope
            others = sum(1 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
            denom = 1 - w * others
            z[k] -= w if denom == 0 else w / denom
    else:
        raise NumericsError(
            f"root iteration failed to converge in {max_iterations} steps"
        )
    polished: List[complex] = []
    for zk in z:
        best, best_res = zk, residual(monic, zk)
        current = zk
        for _ in range(12):
            slope = deriv(current)
            if slope == 0:
                break
            current = current - monic(current) / slope
            res = residual(monic, current)
            if res < best_res:
                best, best_res = current, res
        polished.append(best)
    return sorted(polished, key=lambda w: (w.real, w.imag))


def root_clusters(
    roots: Sequence[complex], radius: float = 1e-5
) -> List[Tuple[complex, int]]:
    """Greedy clustering of near-coincident roots: (center, multiplicity).

    Two roots join one cluster when they sit within ``radius * (1 + |center|)``
    of its running mean; clusters are reported sorted by (re, im).
    """
    centers: List[complex] = []
    members: List[List[complex]] = []
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        placed = False
        for i, center in enumerate(centers):
            if abs(z - center) <= radius * (1 + abs(center)):
                members[i].append(z)
                centers[i] = sum(members[i]) / len(members[i])
                placed = True
                break
        if not placed:
            centers.append(z)
            members.append([z])
    pairs = [(c, len(m)) for c, m in zip(centers, members)]
    return sorted(pairs, key=lambda cm: (cm[0].real, cm[0].imag))


# ---------------------------------------------------------------------------
# polyline paths


@dataclass(frozen=True)
class PathPolyline:
    """An ordered polyline in the complex plane, parameterized by arclength."""

    nodes: Tuple[complex, ...]

    def __post_init__(self) -> None:
        values = tuple(complex(z) for z in self.nodes)
        object.__setattr__(self, "nodes", values)
        if len(values) < 2:
            raise NumericsError("a path needs at least two nodes")
        for a, b in zip(values, values[1:]):
            if a == b:
                raise NumericsError("consecutive path nodes must be distinct")

    def length(self) -> float:
        return sum(abs(b - a) for a, b in zip(self.nodes, self.nodes[1:]))

    def point(self, t: float) -> complex:
        """The point at arclength fraction ``t`` in [0, 1]."""
        if not 0.0 <= t <= 1.0:
            raise NumericsError(f"path parameter {t} outside [0, 1]")
        target = t * self.length()
        for a, b in zip(self.nodes, self.nodes[1:]):
            step = abs(b - a)
            if target <= step or b == self.nodes[-1]:
                return a + (b - a) * min(target / step, 1.0)
            target -= step
        return self.nodes[-1]

    def reversed(self) -> "PathPolyline":
        return PathPolyline(tuple(reversed(self.nodes)))


# ---------------------------------------------------------------------------
# root continuation


@dataclass(frozen=True)
class TrackedRoots:
    """Aligned root trajectories along a path, with per-step certificates."""

    parameters: Tuple[float, ...]  # accepted path parameters, 0 to 1
    roots: Tuple[Tuple[complex, ...], ...]  # track-aligned roots per step
    residuals: Tuple[Tuple[float, ...], ...]  # backward-error residuals
    matchings: Tuple[Tuple[int, ...], ...]  # raw-to-track permutation per step

    def __post_init__(self) -> None:
        steps = len(self.parameters)
        if not (len(self.roots) == len(self.residuals) == len(self.matchings) == steps):
            raise NumericsError("per-step records have inconsistent lengths")
        width = self.track_count
        for row in self.matchings:
            if sorted(row) != list(range(width)):
                raise NumericsError("a step matching is not a bijection")

    @property
    def track_count(self) -> int:
        return len(self.roots[0]) if self.roots else 0

    def terminal_collision(self) -> Tuple[int, int]:
        """The unambiguous colliding track pair at the final step.

        The closest terminal pair qualifies only when its distance is below
        1e-4 and below one tenth of the next-smallest pairwise distance.
        """
        final = self.roots[-1]
        if len(final) < 2:
            raise NumericsError("need at least two tracks for a collision")
        pairs = sorted(
            (abs(final[i] - final[j]), i, j)
            for i in range(len(final))
            for j in range(i + 1, len(final))
        )
        closest, i, j = pairs[0]
        runner_up = pairs[1][0] if len(pairs) > 1 else math.inf
        if closest < 1e-4 and closest < runner_up / 10:
            return (i, j)
        raise NumericsError(
            f"no unambiguous terminal collision (closest {closest:.3g}, "
            f"next {runner_up:.3g})"
        )

    def to_csv(self) -> str:
        lines = ["step,track_id,re,im,residual"]
        for step, (row, res) in enumerate(zip(self.roots, self.residuals)):
            for track, (z, r) in enumerate(zip(row, res)):
                lines.append(
                    f"{step},{track},{z.real:.16e},{z.imag:.16e},{r:.16e}"
                )
        return "\n".join(lines) + "\n"


def _newton(p: CPoly, start: complex, tol: float, max_iter: int = 30) -> complex:
    deriv = p.derivative()
    current = start
    best, best_res = start, residual(p, start)
    for _ in range(max_iter):
        slope = deriv(current)
        if slope == 0:
            break
        current = current - p(current) / slope
        res = residual(p, current)
        if res < best_res:
            best, best_res = current, res
        if res < tol * 1e-2:
            break
    return best


def _min_pairwise(values: Sequence[complex]) -> float:
    if len(values) < 2:
        return math.inf
    return min(
        abs(values[i] - values[j])
        for i in range(len(values))
        for j in range(i + 1, len(values))
    )


def _match(old: Sequence[complex], raw: Sequence[complex]) -> Tuple[int, ...]:
    """A bijective matching track -> raw index: nearest-neighbor, then optimal."""
    nearest = [
        min(range(len(raw)), key=lambda j: abs(z - raw[j])) for z in old
    ]
    if len(set(nearest)) == len(raw):
        return tuple(nearest)
    cost = np.array(
        [[abs(z - w) for w in raw] for z in old], dtype=float
    )
    _, columns = linear_sum_assignment(cost)
    return tuple(int(c) for c in columns)


def continue_roots(
    family: Callable[[complex], CPoly],
    path: PathPolyline,
    tol: float = 1e-10,
    initial_step: float = 0.125,
    min_step: float = 1e-8,
) -> TrackedRoots:
    """Continue the roots of ``family(path.point(t))`` from t = 0 to t = 1.

    Predictor-corrector continuation: tracks advance by Newton correction
    from an extrapolated prediction, with full recomputation and optimal
    matching as fallback.  A step is accepted only when the previous roots'
    minimal pairwise distance exceeds three times the matching displacement,
    else the step halves.  The final node is exempt (roots are allowed to
    collide there): once the step floor is reached inside a vanishing window
    of the endpoint, the last step is closed with optimal matching.  A step
    floor reached anywhere else reports a mid-path singularity.
    """
    poly = family(path.point(0.0))
    degree = poly.degree
    if degree < 1:
        raise NumericsError("family must have degree at least 1")
    current = tuple(all_roots(poly, tol))
    steps = [(0.0, current, tuple(residual(poly, z) for z in current),
              tuple(range(degree)))]
    t = 0.0
    dt = initial_step
    previous_step: Optional[Tuple[float, Tuple[complex, ...]]] = None
    while t < 1.0:
        t_next = min(t + dt, 1.0)
        poly_next = family(path.point(t_next))
        if poly_next.degree != degree:
            raise NumericsError(
                f"family degree changed from {degree} to {poly_next.degree} "
                f"at t = {t_next:.6g}"
            )
        separation = _min_pairwise(current)
        # predictor: linear extrapolation when two accepted steps exist
        if previous_step is not None and previous_step[0] < t:
            t_prev, roots_prev = previous_step
            scale = (t_next - t) / (t - t_prev)
            predicted = [
                z + (z - w) * scale for z, w in zip(current, roots_prev)
            ]
        else:
            predicted = list(current)
        corrected = [_newton(poly_next, z, tol) for z in predicted]
        duplicate_floor = max(1e-13, 1e-6 * separation)
        if (
            all(residual(poly_next, z) < tol for z in corrected)
            and _min_pairwise(corrected) > duplicate_floor
        ):
            aligned = tuple(corrected)
            matching = tuple(range(degree))
        else:
            try:
                raw = all_roots(poly_next, tol)
            except NumericsError:
                raw = None
            if raw is None:
                aligned = None
            else:
                matching = _match(current, raw)
                aligned = tuple(raw[j] for j in matching)
        displacement = (
            max(abs(a - b) for a, b in zip(aligned, current))
            if aligned is not None
            else math.inf
        )
        if aligned is not None and separation > 3 * displacement:
            previous_step = (t, current)
            current = aligned
            t = t_next
            steps.append(
                (t, aligned, tuple(residual(poly_next, z) for z in aligned),
                 matching)
            )
            dt = min(initial_step, dt * 1.6)
            continue
        dt /= 2
        if dt >= min_step:
            continue
        if 1.0 - t <= 100 * min_step:
            # terminal closure: collisions are allowed at the final node
            poly_end = family(path.point(1.0))
            raw = all_roots(poly_end, tol)
            matching = _match(current, raw)
            aligned = tuple(raw[j] for j in matching)
            steps.append(
                (1.0, aligned, tuple(residual(poly_end, z) for z in aligned),
                 matching)
            )
            break
        raise NumericsError(
            f"step size underflow at t = {t:.6g} before the final node; "
            "the family appears singular mid-path (perturb and retry)"
        )
    return TrackedRoots(
        parameters=tuple(s[0] for s in steps),
        roots=tuple(s[1] for s in steps),
        residuals=tuple(s[2] for s in steps),
        matchings=tuple(s[3] for s in steps),
    )


# ---------------------------------------------------------------------------
# elliptic integrals with branch-point endpoints

_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(16)


def elliptic_integral(
    cubic: CPoly,
    path: PathPolyline,
    branch_seed: Optional[complex] = None,
    tol: float = 1e-9,
    max_level: int = 9,
) -> complex:
    """The integral of dx / y along ``path``, with y^2 = cubic(x).

    Endpoints may coincide with roots of the cubic: the bordering segment is
    integrated in the square-root variable x = root + s^2 (delta), which
    removes the endpoint singularity exactly.  The square root is evaluated
    in factored form (product over the three roots) and its branch is
    marched node to node along the path; the branch at the anchor -- the
    first interior quadrature node of the base grid -- is the principal
    square root of the cubic there, or the choice nearest ``branch_seed``
    when one is given.  Panels double until the whole-path total moves by
    less than ``tol``.
    """
    if cubic.degree != 3:
        raise NumericsError("elliptic integrals need a cubic")
    roots = all_roots(cubic)
    lead = cubic.leading
    scale = 1.0 + max(abs(r) for r in roots)
    snap = 1e-9 * scale

    def nearest(z: complex) -> Tuple[float, int]:
        return min((abs(z - r), i) for i, r in enumerate(roots))

    nodes = list(path.nodes)
    for w in nodes[1:-1]:
        if nearest(w)[0] < snap:
            raise NumericsError("an interior path node sits on a root")
    start_dist, start_idx = nearest(nodes[0])
    end_dist, end_idx = nearest(nodes[-1])
    start_is_root = start_dist < snap
    end_is_root = end_dist < snap
    if len(nodes) == 2 and start_is_root and end_is_root:
        nodes = [nodes[0], (nodes[0] + nodes[1]) / 2, nodes[1]]

    # jobs in path order: plain segments and substituted end segments
    jobs: List[Tuple[str, complex, complex, int]] = []
    for i, (w0, w1) in enumerate(zip(nodes, nodes[1:])):
        if i == 0 and start_is_root:
            jobs.append(("start", roots[start_idx], w1, start_idx))
        elif i == len(nodes) - 2 and end_is_root:
            jobs.append(("end", roots[end_idx], w0, end_idx))
        else:
            jobs.append(("plain", w0, w1, -1))

    def stream(level: int) -> Iterator[Tuple[complex, complex, int, complex]]:
        """Yield (x, d-contribution weight, substituted index, exact factor)."""
        panels = 1 << level
        for kind, a, b, ridx in jobs:
            if kind == "plain":
                delta = b - a
                for panel in range(panels):
                    lo = panel / panels
                    width = 1.0 / panels
                    for xg, wg in zip(_GAUSS_NODES, _GAUSS_WEIGHTS):
                        u = lo + width * (xg + 1) / 2
                        weight = wg * width / 2
                        yield (a + u * delta, weight * delta, -1, 0j)
            else:
                delta = b - a  # from the root to the far node
                forward = kind == "start"
                panel_order = range(panels) if forward else reversed(range(panels))
                sign = 1.0 if forward else -1.0
                for panel in panel_order:
                    lo = panel / panels
                    width = 1.0 / panels
                    gauss = (
                        zip(_GAUSS_NODES, _GAUSS_WEIGHTS)
                        if forward
                        else zip(reversed(_GAUSS_NODES), reversed(_GAUSS_WEIGHTS))
                    )
                    for xg, wg in gauss:
                        s = lo + width * (xg + 1) / 2
                        weight = wg * width / 2
                        factor = s * s * delta
                        yield (a + factor, sign * weight * 2 * s * delta,
                               ridx, factor)

    def branch_value(x: complex, ridx: int, factor: complex) -> complex:
        value = cmath.sqrt(lead)
        for i, r in enumerate(roots):
            value *= cmath.sqrt(factor if i == ridx else x - r)
        return value

    first_x, _, first_idx, first_factor = next(stream(0))
    anchor_value = branch_value(first_x, first_idx, first_factor)
    reference = (
        branch_seed if branch_seed is not None else cmath.sqrt(cubic(first_x))
    )
    if abs(anchor_value - reference) > abs(anchor_value + reference):
        anchor_value = -anchor_value

    def evaluate(level: int) -> complex:
        total = 0j
        y_prev = anchor_value
        for x, weight, ridx, factor in stream(level):
            for i, r in enumerate(roots):
                if i != ridx and abs(x - r) < snap:
                    raise NumericsError(
                        "path passes too close to a root of the cubic"
                    )
            value = branch_value(x, ridx, factor)
            if value == 0:
                raise NumericsError("square root vanished at a quadrature node")
            if abs(value - y_prev) > abs(value + y_prev):
                value = -value
            y_prev = value
            total += weight / value
        return total

    previous = evaluate(0)
    for level in range(1, max_level + 1):
        current = evaluate(level)
        if abs(current - previous) < tol:
            return current
        previous = current
    raise NumericsError(
        "quadrature did not converge: branch tracking is unreliable this "
        "close to a root (refine the path or perturb)"
    )


def period_lattice(epsilon: float, tol: float = 1e-9) -> Tuple[complex, complex]:
    """The period pair of y^2 = x^3 + epsilon x at positive real ``epsilon``.

    The first period doubles the integral over the segment from -i sqrt(eps)
    to 0, the second over the segment from 0 to +i sqrt(eps), both with the
    principal-branch anchor convention; the pair is checked to be R-linearly
    independent.
    """
    if not epsilon > 0:
        raise NumericsError("epsilon must be positive")
    eps = float(epsilon)
    r = math.sqrt(eps)
    cubic = CPoly((0j, complex(eps), 0j, 1 + 0j))
    omega_a = 2 * elliptic_integral(
        cubic, PathPolyline((complex(0, -r), 0j)), tol=tol / 2
    )
    omega_b = 2 * elliptic_integral(
        cubic, PathPolyline((0j, complex(0, r))), tol=tol / 2
    )
    area = (omega_a.conjugate() * omega_b).imag
    if abs(area) < 1e-12 * abs(omega_a) * abs(omega_b):
        raise NumericsError("computed periods are R-linearly dependent")
    return omega_a, omega_b
