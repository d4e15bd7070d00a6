"""Interpolation families between catalog fibrations.

For two perturbed catalog models the family blends the fibration
polynomials through complex coefficients, tracks every critical value on
the projective line (an escape to infinity is an ordinary chart switch),
renders the trajectory figures, and proposes a mutation word from the
braiding of the tracks around the base point.  The proposed word is a
candidate only: exact validation goes through the pseudolattice layer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .pathnum import CPoly, NumericsError, all_roots
from .pseudolattice import MutationMove, MutationWord
from .weierstrass import WeierstrassModel, catalog

__all__ = [
    "ComplexModel",
    "FamilySpec",
    "ProjectivePoint",
    "RenderStyle",
    "SweepControl",
    "TrajectorySet",
    "chordal",
    "family_at",
    "render_svg",
    "sweep",
    "transposition_word",
]

FINITE = "finite"  # chart coordinate is the base parameter itself
INFINITE = "infinite"  # chart coordinate is its reciprocal


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of the projective line in one of two affine charts."""

    chart: str  # FINITE or INFINITE
    coordinate: complex  # position in the named chart

    def __post_init__(self) -> None:
        if self.chart not in (FINITE, INFINITE):
            raise ValueError(f"unknown chart {self.chart!r}")
        if self.chart == FINITE and abs(self.coordinate) > 1.0 + 1e-12:
            raise ValueError("finite-chart coordinate exceeds the chart bound")

    @property
    def parked(self) -> bool:
        """True for the point at infinity itself."""
        return self.chart == INFINITE and self.coordinate == 0

    def affine(self) -> complex:
        """The position in the finite chart; rejects the point at infinity."""
        if self.chart == FINITE:
            return self.coordinate
        if self.parked:
            raise NumericsError("the point at infinity has no affine position")
        return 1 / self.coordinate

    @classmethod
    def from_affine(cls, value: complex) -> "ProjectivePoint":
        if abs(value) <= 1.0:
            return cls(FINITE, value)
        return cls(INFINITE, 1 / value)


def chordal(p: ProjectivePoint, q: ProjectivePoint) -> float:
    """The chordal distance on the projective line (bounded by 1)."""
    a, b = (p.coordinate, 1 + 0j) if p.chart == FINITE else (1 + 0j, p.coordinate)
    c, d = (q.coordinate, 1 + 0j) if q.chart == FINITE else (1 + 0j, q.coordinate)
    cross = abs(a * d - b * c)
    norm = math.sqrt((abs(a) ** 2 + abs(b) ** 2) * (abs(c) ** 2 + abs(d) ** 2))
    return cross / norm


# ---------------------------------------------------------------------------
# the family


@dataclass(frozen=True)
class ComplexModel:
    """Complex-coefficient fibration data ``y^2 = x^3 + a(t) x + b(t)``."""

    a: CPoly  # coefficient of x, polynomial in the base parameter
    b: CPoly  # constant coefficient, polynomial in the base parameter

    def invariant_scale(self) -> CPoly:
        """The singular-fiber invariant 4a^3 + 27b^2."""
        return 4 * (self.a * self.a * self.a) + 27 * (self.b * self.b)

    def sphere_degree(self) -> int:
        """Upper bound for the invariant degree; root count on the sphere."""
        return max(3 * self.a.degree, 2 * self.b.degree)


@dataclass(frozen=True)
class FamilySpec:
    """Endpoint models of one interpolation family."""

    start: WeierstrassModel
    end: WeierstrassModel

    def __post_init__(self) -> None:
        if self.start.var != self.end.var:
            raise ValueError("endpoint models live on different charts")

    @classmethod
    def between_degrees(
        cls, d_from: int, d_to: int, epsilon: Fraction = Fraction(1, 100)
    ) -> "FamilySpec":
        return cls(catalog(d_from, epsilon), catalog(d_to, epsilon))


def family_at(spec: FamilySpec, s: float) -> ComplexModel:
    """The fibration of the blended family at interpolation time ``s``.

    The cubic is the unit-circle blend ``e^{i pi s} p_0 + s (p_0 + p_1)``
    of the endpoint cubics, renormalized to a monic model; at ``s = 0``
    and ``s = 1`` the phase factor is evaluated exactly, so the endpoints
    reproduce the input models without rounding.
    """
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"interpolation time {s} outside [0, 1]")
    if s == 0.0:
        phase = 1.0 + 0j
    elif s == 1.0:
        phase = -1.0 + 0j
    else:
        phase = cmath.exp(1j * math.pi * s)
    scale = phase + 2 * s
    a0 = CPoly.from_unipoly(spec.start.a)
    a1 = CPoly.from_unipoly(spec.end.a)
    b0 = CPoly.from_unipoly(spec.start.b)
    b1 = CPoly.from_unipoly(spec.end.b)
    blended_a = phase * a0 + s * (a0 + a1)
    blended_b = phase * b0 + s * (b0 + b1)
    return ComplexModel(scale * blended_a, (scale * scale) * blended_b)


# ---------------------------------------------------------------------------
# the sweep


@dataclass(frozen=True)
class SweepControl:
    """Grid control for the trajectory sweep."""

    samples: int = 400  # uniform grid intervals over [0, 1]
    proximity: float = 1e-3  # chordal distance that triggers refinement
    max_motion: float = 0.02  # largest accepted chordal step per track
    width_floor: float = 1e-6  # refinement stops below this interval width
    boundary: float = 0.9  # chart-boundary annulus is (boundary, 1/boundary)

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("at least one grid interval is required")
        if not 0 < self.boundary < 1:
            raise ValueError("the boundary parameter must sit inside (0, 1)")


@dataclass(frozen=True)
class TrajectorySet:
    """Tracked critical-value positions over the interpolation interval."""

    parameters: Tuple[float, ...]  # increasing sample times in [0, 1]
    positions: Tuple[Tuple[ProjectivePoint, ...], ...]  # [sample][track]
    chart_switches: Tuple[Tuple[int, float], ...]  # (track, time) events

    def __post_init__(self) -> None:
        if len(self.parameters) != len(self.positions):
            raise NumericsError("sample times and position rows disagree")
        if self.positions:
            width = len(self.positions[0])
            if any(len(row) != width for row in self.positions):
                raise NumericsError("position rows have unequal track counts")
        if list(self.parameters) != sorted(set(self.parameters)):
            raise NumericsError("sample times must increase strictly")

    @property
    def track_count(self) -> int:
        return len(self.positions[0]) if self.positions else 0

    def finite_count(self, sample: int) -> int:
        """Number of tracks away from infinity at the given sample index."""
        return sum(1 for p in self.positions[sample] if not p.parked)

    def track(self, index: int) -> Tuple[ProjectivePoint, ...]:
        return tuple(row[index] for row in self.positions)

    def to_csv(self) -> str:
        lines = ["s,track,chart,re,im"]
        for s, row in zip(self.parameters, self.positions):
            for index, point in enumerate(row):
                lines.append(
                    f"{s:.16e},{index},{point.chart},"
                    f"{point.coordinate.real:.16e},{point.coordinate.imag:.16e}"
                )
        return "\n".join(lines) + "\n"


def _configuration(spec: FamilySpec, s: float) -> List[ProjectivePoint]:
    """All sphere positions of the invariant roots at time ``s``."""
    model = family_at(spec, s)
    bound = model.sphere_degree()
    invariant = model.invariant_scale().trimmed()
    if invariant.degree < 1:
        raise NumericsError(f"the invariant degenerates at time {s}")
    tallest = max(abs(c) for c in invariant.coeffs)
    if abs(invariant(0j)) <= 1e-12 * tallest:
        raise NumericsError(f"a critical value hits the base point at time {s}")
    points = [ProjectivePoint.from_affine(z) for z in all_roots(invariant)]
    points.extend(
        ProjectivePoint(INFINITE, 0j) for _ in range(bound - invariant.degree)
    )
    return points


def _match(
    previous: Sequence[ProjectivePoint], current: Sequence[ProjectivePoint]
) -> List[ProjectivePoint]:
    """Reorder ``current`` so entry i continues track i of ``previous``."""
    if len(previous) != len(current):
        raise NumericsError("track count changed between samples")
    cost = np.array([[chordal(p, q) for q in current] for p in previous])
    rows, cols = linear_sum_assignment(cost)
    ordered: List[Optional[ProjectivePoint]] = [None] * len(current)
    for r, c in zip(rows, cols):
        ordered[r] = current[c]
    return [point for point in ordered if point is not None]


def _in_boundary_annulus(point: ProjectivePoint, boundary: float) -> bool:
    modulus = abs(point.coordinate)
    return boundary < modulus <= 1.0


def _interval_verdict(
    before: Sequence[ProjectivePoint],
    after: Sequence[ProjectivePoint],
    control: SweepControl,
) -> Optional[str]:
    """The reason the interval needs refinement, or None to accept."""
    motion = max(chordal(p, q) for p, q in zip(before, after))
    if motion > control.max_motion:
        return "motion"
    n = len(after)
    for i in range(n):
        for j in range(i + 1, n):
            if before[i].parked and before[j].parked:
                continue
            now = chordal(after[i], after[j])
            was = chordal(before[i], before[j])
            if now < control.proximity and now < was:
                return "proximity"
    for p, q in zip(before, after):
        if _in_boundary_annulus(q, control.boundary) and not _in_boundary_annulus(
            p, control.boundary
        ):
            return "boundary"
    return None


def sweep(spec: FamilySpec, control: SweepControl = SweepControl()) -> TrajectorySet:
    """Track all critical values of the family across the interval.

    Tracks are matched between samples by minimal total chordal motion.
    Intervals showing a large step, an approaching pair, or a fresh entry
    into the chart-boundary annulus are bisected down to the width floor;
    a step that still moves tracks too far at the floor is reported as an
    unresolved crossing.
    """
    start = _configuration(spec, 0.0)
    parameters = [0.0]
    rows: List[List[ProjectivePoint]] = [start]
    switches: List[Tuple[int, float]] = []
    pending = [k / control.samples for k in range(1, control.samples + 1)]
    while pending:
        target = pending[0]
        here = parameters[-1]
        matched = _match(rows[-1], _configuration(spec, target))
        verdict = _interval_verdict(rows[-1], matched, control)
        if verdict is not None and target - here > control.width_floor:
            pending.insert(0, here + (target - here) / 2)
            continue
        if verdict == "motion":
            raise NumericsError(
                f"unresolved track crossing between times {here:.8f} and "
                f"{target:.8f}; tracks moved too far at the width floor"
            )
        for index, (p, q) in enumerate(zip(rows[-1], matched)):
            if p.chart != q.chart:
                switches.append((index, target))
        parameters.append(target)
        rows.append(matched)
        pending.pop(0)
    return TrajectorySet(
        parameters=tuple(parameters),
        positions=tuple(tuple(row) for row in rows),
        chart_switches=tuple(switches),
    )


# ---------------------------------------------------------------------------
# the braiding heuristic


def _angular_slots(
    row: Sequence[ProjectivePoint], anchor: int, basepoint: complex
) -> List[int]:
    """Finite tracks in sweep order around the basepoint, anchor first.

    Mirrors the critical-value ordering: the anchor track opens the list
    and the remaining finite tracks follow by strictly decreasing angle
    taken in the length-2pi window below the anchor's angle.
    """
    finite = [i for i, p in enumerate(row) if not p.parked]
    offsets = {i: row[i].affine() - basepoint for i in finite}
    for i, z in offsets.items():
        if abs(z) < 1e-9:
            raise NumericsError("a track passes through the base point")
    theta = math.atan2(offsets[anchor].imag, offsets[anchor].real)

    def sweep_angle(i: int) -> float:
        z = offsets[i]
        return theta - ((theta - math.atan2(z.imag, z.real)) % (2 * math.pi))

    rest = sorted(
        (i for i in finite if i != anchor),
        key=lambda i: (-sweep_angle(i), abs(offsets[i])),
    )
    return [anchor] + rest


# Two tracks closer than this are treated as one unresolved tangle: the
# matcher cannot certify which strand is which through such a core, so
# swaps inside it carry no usable braiding information.
_TANGLE_CORE = 5e-3
# Once tangled, two tracks must separate beyond this gap before their
# mutual swaps count again; a tangle that never releases contributes no
# net moves.
_TANGLE_RELEASE = 1e-2


class _TangleLedger:
    """Union bookkeeping for track pairs inside unresolved tangles."""

    def __init__(self) -> None:
        self._groups: List[set] = []

    def _find(self, track: int) -> Optional[int]:
        for index, group in enumerate(self._groups):
            if track in group:
                return index
        return None

    def suppresses(self, a: int, b: int, gap: float) -> bool:
        """Record the pair when tangled; True when the swap is muted."""
        ga, gb = self._find(a), self._find(b)
        if gap < _TANGLE_CORE:
            if ga is None and gb is None:
                self._groups.append({a, b})
            elif ga is None and gb is not None:
                self._groups[gb].add(a)
            elif gb is None and ga is not None:
                self._groups[ga].add(b)
            elif ga is not None and gb is not None and ga != gb:
                self._groups[ga] |= self._groups[gb]
                del self._groups[gb]
            return True
        return ga is not None and ga == gb and gap < _TANGLE_RELEASE


def _is_cut_rotation(old: Sequence[int], new: Sequence[int]) -> bool:
    """True when the orders differ by one track crossing the sweep cut.

    The sweep window opens at the anchor's angle, so a track crossing
    that ray jumps between the slot beside the anchor and the last slot
    while every other track keeps its cyclic position.  Such a crossing
    is a relabeling of the cyclic order, not a braiding event, and the
    two crossings of one excursion cancel exactly.  With fewer than
    three tracks beside the anchor the pattern is indistinguishable
    from an ordinary swap, so it is never absorbed.
    """
    if len(old) != len(new) or len(old) < 4 or old[0] != new[0]:
        return False
    body, shifted = list(old[1:]), list(new[1:])
    return shifted == body[1:] + body[:1] or shifted == body[-1:] + body[:-1]


def transposition_word(
    trajectories: TrajectorySet, basepoint: complex = 0j
) -> MutationWord:
    """A candidate mutation word read off the braiding of the tracks.

    Slots order the finite tracks by the clockwise sweep around the base
    point, anchored at the track that starts farthest out.  Moves are
    listed in event order, so the word composes from its right end just
    as the mutation algebra applies it backward along the family.  A
    swap of neighboring slots emits one move at that slot: a left move
    when the track that ends nearer the anchor also passes nearer the
    base point, otherwise a right move — the over/under reading of the
    arc diagrams.  A track arriving from infinity enters at the open end
    of the slot order and walks to its landing slot, one right move per
    slot; a departing track walks out symmetrically with left moves.  A
    track crossing the sweep ray of the anchor merely relabels the
    cyclic order and is absorbed silently, and swaps inside an
    unresolved tangle (tracks closer than the tangle core, until they
    release) are muted, since the matcher carries no braiding
    information through a near-collision.  The result is a proposal to
    be checked with exact mutation identities, never a certificate.
    """
    if not trajectories.positions:
        return MutationWord(())
    first_row = trajectories.positions[0]
    finite0 = [i for i, p in enumerate(first_row) if not p.parked]
    if not finite0:
        raise NumericsError("no finite tracks to order at the first sample")
    anchor = max(finite0, key=lambda i: abs(first_row[i].affine() - basepoint))
    events: List[MutationMove] = []
    tangles = _TangleLedger()
    slots = _angular_slots(first_row, anchor, basepoint)
    for k in range(1, len(trajectories.parameters)):
        row = trajectories.positions[k]
        finite = [i for i, p in enumerate(row) if not p.parked]
        if anchor not in finite:
            raise NumericsError("the anchor track left the finite chart")
        new_slots = _angular_slots(row, anchor, basepoint)
        if new_slots == slots:
            continue
        arrivals = [i for i in new_slots if i not in slots]
        departures = [i for i in slots if i not in new_slots]
        if arrivals and departures:
            raise NumericsError(
                "ambiguous swap: tracks arrived and departed in one step"
            )
        for track in arrivals:
            landing = new_slots.index(track)
            expected = [i for i in new_slots if i != track]
            if expected != slots:
                raise NumericsError(
                    "ambiguous swap: a track arrived while others reordered"
                )
            for slot in range(len(new_slots) - 2, landing - 1, -1):
                events.append(MutationMove("R", slot))
            slots = list(new_slots)
        if arrivals:
            continue
        for track in departures:
            leaving = slots.index(track)
            expected = [i for i in slots if i != track]
            if expected != new_slots:
                raise NumericsError(
                    "ambiguous swap: a track departed while others reordered"
                )
            for slot in range(leaving, len(slots) - 1):
                events.append(MutationMove("L", slot))
            slots = list(new_slots)
        if departures:
            continue
        if _is_cut_rotation(slots, new_slots):
            slots = list(new_slots)
            continue
        # Decompose the reordering into adjacent swaps, innermost first.
        time = trajectories.parameters[k]
        position = {i: row[i].affine() - basepoint for i in new_slots}
        rank = {track: index for index, track in enumerate(new_slots)}
        work = list(slots)
        rounds = 0
        while work != list(new_slots):
            rounds += 1
            if rounds > len(work) * len(work) + 1:
                raise NumericsError(
                    f"ambiguous swap near time {time:.8f}: the slot order "
                    "changed by more than one adjacent swap"
                )
            for slot in range(len(work) - 1):
                outgoing, incoming = work[slot], work[slot + 1]
                if rank[outgoing] <= rank[incoming]:
                    continue
                gap = abs(position[outgoing] - position[incoming])
                if not tangles.suppresses(outgoing, incoming, gap):
                    r_in = abs(position[incoming])
                    r_out = abs(position[outgoing])
                    if math.isclose(r_in, r_out, rel_tol=1e-9, abs_tol=1e-12):
                        raise NumericsError(
                            f"ambiguous swap near time {time:.8f}: "
                            "equal radii within tolerance"
                        )
                    side = "L" if r_in < r_out else "R"
                    events.append(MutationMove(side, slot))
                work[slot], work[slot + 1] = incoming, outgoing
        slots = list(new_slots)
    return MutationWord(tuple(events))


# ---------------------------------------------------------------------------
# rendering


@dataclass(frozen=True)
class RenderStyle:
    """Deterministic styling for the trajectory figure."""

    size: int = 800  # square canvas edge in pixels
    start_color: str = "#1f77b4"  # markers at the first sample
    end_color: str = "#d62728"  # markers at the last sample
    track_color: str = "#666666"  # trajectory strokes
    track_width: float = 1.2  # stroke width
    window: float = 1.3  # viewport padding around the endpoint markers


def _spline_path(points: Sequence[Tuple[float, float]]) -> str:
    """A cubic path through the points (Catmull-Rom converted to Bezier)."""
    if len(points) == 1:
        x, y = points[0]
        return f"M {x:.2f} {y:.2f}"
    parts = [f"M {points[0][0]:.2f} {points[0][1]:.2f}"]
    extended = [points[0], *points, points[-1]]
    for i in range(1, len(extended) - 2):
        p0, p1, p2, p3 = extended[i - 1], extended[i], extended[i + 1], extended[i + 2]
        c1 = (p1[0] + (p2[0] - p0[0]) / 6, p1[1] + (p2[1] - p0[1]) / 6)
        c2 = (p2[0] - (p3[0] - p1[0]) / 6, p2[1] - (p3[1] - p1[1]) / 6)
        parts.append(
            f"C {c1[0]:.2f} {c1[1]:.2f} {c2[0]:.2f} {c2[1]:.2f} "
            f"{p2[0]:.2f} {p2[1]:.2f}"
        )
    return " ".join(parts)


def render_svg(
    trajectories: TrajectorySet, style: RenderStyle = RenderStyle()
) -> str:
    """A deterministic figure of the finite-chart trajectories.

    The viewport frames the endpoint markers; excursions toward infinity
    run off the canvas.  Tracks are drawn as cubic splines, endpoint
    positions as two marker colors, and the axes cross at the base point.
    """
    size = style.size
    markers: List[Tuple[complex, str]] = []
    if trajectories.positions:
        for point in trajectories.positions[0]:
            if not point.parked:
                markers.append((point.affine(), style.start_color))
        for point in trajectories.positions[-1]:
            if not point.parked:
                markers.append((point.affine(), style.end_color))
    if markers:
        extent = max(
            max(abs(z.real) for z, _ in markers),
            max(abs(z.imag) for z, _ in markers),
        )
        half = style.window * max(extent, 1e-9)
    else:
        half = 1.0
    scale = size / (2 * half)

    def place(z: complex) -> Tuple[float, float]:
        return ((z.real + half) * scale, (half - z.imag) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{size / 2:.2f}" x2="{size}" y2="{size / 2:.2f}" '
        'stroke="#bbbbbb" stroke-width="1"/>',
        f'<line x1="{size / 2:.2f}" y1="0" x2="{size / 2:.2f}" y2="{size}" '
        'stroke="#bbbbbb" stroke-width="1"/>',
    ]
    for index in range(trajectories.track_count):
        run: List[Tuple[float, float]] = []
        runs: List[List[Tuple[float, float]]] = []
        for point in trajectories.track(index):
            if point.parked:
                if run:
                    runs.append(run)
                    run = []
                continue
            run.append(place(point.affine()))
        if run:
            runs.append(run)
        for segment in runs:
            parts.append(
                f'<path d="{_spline_path(segment)}" fill="none" '
                f'stroke="{style.track_color}" '
                f'stroke-width="{style.track_width}"/>'
            )
    for z, color in markers:
        x, y = place(z)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
