"""Weierstrass models of rational elliptic fibrations over the affine line.

A model is a pair of univariate polynomials ``(a, b)`` standing for the
fibration ``y^2 = x^3 + a(lam) x + b(lam)``.  The module provides

* a small catalog of reference fibrations indexed by an integer degree
  ``d in {1, 2, 3}``, together with their standard perturbations,
* the reduction from the associated hyperelliptic (Hori--Vafa style) curve
  presentations to the same Weierstrass data,
* exact Kodaira fiber classification from coefficient valuations, and
* full fiber configurations over the projective line, with the Euler-number
  count certifying completeness.

Places are rational numbers (serialized ``"num/den"``) or ``"inf"``; groups
of Galois-conjugate irrational places are reported through their common
minimal polynomial factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exactpoly import (
    BiPoly,
    LaurentPoly,
    Rational,
    UniPoly,
    depress_cubic,
    disc_cubic,
    disc_quadratic_in_y,
    poly_gcd,
    rational_from_string,
    rational_roots,
    rational_to_string,
    squarefree_factorization,
    valuation_at,
)

# A place on the projective line: a rational base point or the point at
# infinity (represented by the string "inf").
Place = Union[Fraction, str]

# Exponents (a3, a4) of the two non-trivial weights entering the curve
# presentation lam * (1 - x/y - y) * (x/y)^a3 * y^a4 = 1 for each degree.
_HV_EXPONENTS: Dict[int, Tuple[int, int]] = {1: (2, 3), 2: (1, 2), 3: (1, 1)}

# Euler numbers of the Kodaira types handled here (I_n and I_n* carry their
# index separately).
_EULER: Dict[str, int] = {
    "I0": 0, "II": 2, "III": 3, "IV": 4,
    "IV*": 8, "III*": 9, "II*": 10,
}


class FiberClassificationError(ValueError):
    """Raised when a fiber configuration cannot be certified exactly."""


@dataclass(frozen=True)
class WeierstrassModel:
    """Coefficients of ``y^2 = x^3 + a(t) x + b(t)`` over one affine chart."""

    a: UniPoly  # quartic-bounded coefficient of x
    b: UniPoly  # sextic-bounded constant coefficient

    def __post_init__(self) -> None:
        if self.a.var != self.b.var:
            raise ValueError("coefficients live on different charts")

    @property
    def var(self) -> str:
        return self.a.var

    def discriminant_scale(self) -> UniPoly:
        """The invariant 4a^3 + 27b^2 governing singular fibers."""
        return disc_cubic(self.a, self.b)

    def to_json(self) -> Dict[str, object]:
        return {"a": self.a.to_pairs(), "b": self.b.to_pairs()}

    @classmethod
    def from_json(cls, data: Dict[str, object], var: str = "lam") -> "WeierstrassModel":
        return cls(UniPoly.from_pairs(data["a"], var), UniPoly.from_pairs(data["b"], var))


@dataclass(frozen=True)
class KodairaFiber:
    """A classified singular fiber."""

    type_name: str  # "I0", "In", "In*", "II", ..., "II*", or "NonMinimal"
    index: int  # n for "In"/"In*", else 0
    v_a: int  # valuation of a at the place
    v_b: int  # valuation of b at the place
    v_disc: int  # valuation of 4a^3 + 27b^2 at the place

    @property
    def label(self) -> str:
        if self.type_name == "In":
            return f"I{self.index}"
        if self.type_name == "In*":
            return f"I{self.index}*"
        return self.type_name

    @property
    def euler_number(self) -> int:
        if self.type_name == "In":
            return self.index
        if self.type_name == "In*":
            return 6 + self.index
        if self.type_name == "NonMinimal":
            raise FiberClassificationError("non-minimal fiber has no Euler number here")
        return _EULER[self.type_name]


@dataclass(frozen=True)
class FiberPlacement:
    """A fiber (or group of conjugate fibers) at a place of the base."""

    place: Optional[Place]  # rational place, "inf", or None for a group
    fiber: KodairaFiber
    count: int = 1  # number of conjugate places sharing this fiber
    factor: Optional[UniPoly] = None  # minimal polynomial of a grouped place

    def place_string(self) -> str:
        if self.place == "inf":
            return "inf"
        if self.place is not None:
            return rational_to_string(self.place)
        return "roots(" + ",".join(
            f"{e}:{rational_to_string(c)}" for e, c in sorted(self.factor.terms.items())
        ) + ")"


@dataclass(frozen=True)
class FiberConfiguration:
    """All singular fibers of a model over the projective line."""

    model: WeierstrassModel
    placements: Tuple[FiberPlacement, ...]

    def euler_total(self) -> int:
        return sum(p.count * p.fiber.euler_number for p in self.placements)

    def labels(self) -> List[str]:
        return [p.fiber.label for p in self.placements for _ in range(p.count)]

    def to_json(self) -> Dict[str, object]:
        return {
            "model": self.model.to_json(),
            "fibers": [
                {
                    "place": p.place_string(),
                    "type": p.fiber.label,
                    "count": p.count,
                    "v_a": p.fiber.v_a,
                    "v_b": p.fiber.v_b,
                    "v_disc": p.fiber.v_disc,
                }
                for p in self.placements
            ],
            "euler_total": self.euler_total(),
        }


# ---------------------------------------------------------------------------
# catalog


def catalog(d: int, perturbation: Rational | None = None) -> WeierstrassModel:
    """Reference Weierstrass data for degree ``d`` in {1, 2, 3}.

    With ``perturbation`` epsilon, returns the standard deformation
    ``(a + epsilon, b)`` used to split degenerate fibers into nodal ones.
    """
    if d == 1:
        a = UniPoly({4: Fraction(-1, 3)})
        b = UniPoly({6: Fraction(2, 27), 5: -64})
    elif d == 2:
        a = UniPoly({4: Fraction(-1, 3), 3: 16})
        b = UniPoly({6: Fraction(2, 27), 5: Fraction(-16, 3)})
    elif d == 3:
        a = UniPoly({4: Fraction(-1, 3), 3: 8})
        b = UniPoly({6: Fraction(2, 27), 5: Fraction(-8, 3), 4: 16})
    else:
        raise ValueError(f"no catalog entry for degree {d}")
    if perturbation is not None:
        a = a + UniPoly.constant(perturbation)
    return WeierstrassModel(a, b)


def reference_nodal_place(d: int) -> Fraction:
    """The unique nonzero rational place carrying a nodal fiber, per degree."""
    return {1: Fraction(432), 2: Fraction(64), 3: Fraction(27)}[d]


# ---------------------------------------------------------------------------
# hyperelliptic reduction


@dataclass(frozen=True)
class HVReduction:
    """Intermediates of the curve-presentation to Weierstrass reduction."""

    quadratic: Tuple[BiPoly, BiPoly, BiPoly]  # (A, B, C) with A y^2 + B y + C
    y_discriminant: BiPoly  # B^2 - 4AC, after clearing excess x powers
    model: WeierstrassModel


def hv_to_weierstrass(d: int) -> HVReduction:
    """Reduce the degree-``d`` curve presentation to Weierstrass form.

    Starting from ``lam * (1 - y3 - y4) * y3^a3 * y4^a4 = 1`` with
    ``y3 = x/y`` and ``y4 = y``, the equation is cleared to a quadratic in
    ``y``, its ``y``-discriminant is taken, excess powers of ``x`` are
    divided out, and the resulting cubic in ``x`` is depressed.
    """
    a3, a4 = _HV_EXPONENTS[d]
    # Work in Laurent variables (lam, x, y); y3 = x / y and y4 = y.
    lam = LaurentPoly.monomial((1, 0, 0))
    y4 = LaurentPoly.monomial((0, 0, 1))
    one = LaurentPoly.constant(1, 3)
    y3 = LaurentPoly.monomial((0, 1, -1))
    curve = lam * (one - y3 - y4) * y3**a3 * y4**a4 - one
    # Clear denominators in y.
    min_y = min(e[2] for e in curve.terms)
    if min_y < 0:
        curve = curve * LaurentPoly.monomial((0, 0, -min_y))
    y_deg = max(e[2] for e in curve.terms)
    if y_deg != 2:
        raise FiberClassificationError(
            f"curve presentation for d={d} is not quadratic in y (degree {y_deg})"
        )
    coeffs: List[BiPoly] = []
    for k in (2, 1, 0):
        terms = {(el, ex): c for (el, ex, ey), c in curve.terms.items() if ey == k}
        if any(el < 0 or ex < 0 for el, ex in terms):
            raise FiberClassificationError("unexpected pole after clearing")
        coeffs.append(BiPoly(terms))
    A, B, C = coeffs
    disc = disc_quadratic_in_y(A, B, C)
    xdeg = disc.x_degree()
    if xdeg > 3:
        disc = disc.divide_by_x_power(xdeg - 3)
    unis = [disc.x_coefficient(k) for k in (3, 2, 1, 0)]
    a_out, b_out = depress_cubic(*unis)
    return HVReduction((A, B, C), disc, WeierstrassModel(a_out, b_out))


# ---------------------------------------------------------------------------
# minimality


def chart_at_infinity(model: WeierstrassModel) -> WeierstrassModel:
    """The same fibration in the coordinate at infinity ``mu = 1/lam``.

    The substitution (x, y) -> (x/mu^2, y/mu^3) turns coefficients into
    ``mu^4 a(1/mu)`` and ``mu^6 b(1/mu)``; degrees above (4, 6) would leave
    poles and are rejected.
    """
    if model.a.degree() > 4 or model.b.degree() > 6:
        raise ValueError("coefficients exceed degrees (4, 6); no smooth chart at infinity")
    other = "mu" if model.var == "lam" else "lam"
    a = UniPoly({4 - e: c for e, c in model.a.terms.items()}, other)
    b = UniPoly({6 - e: c for e, c in model.b.terms.items()}, other)
    return WeierstrassModel(a, b)


@dataclass(frozen=True)
class MinimalityReport:
    """Outcome of the global minimality test."""

    is_minimal: bool
    violation: Optional[str] = None  # human-readable first violation


def is_globally_minimal(model: WeierstrassModel) -> MinimalityReport:
    """Check that the model is a relatively minimal rational elliptic surface.

    Tested in order: degree bounds deg a <= 4 and deg b <= 6; a not
    identically-degenerate discriminant invariant; the invariant not a pure
    twelfth power ``const * (lam - r)^12`` of a linear form; and at every
    rational zero of the invariant (and at infinity) the valuation bound
    ``v(a) < 4 or v(b) < 6``.  Returns the first violation found.
    """
    if model.a.degree() > 4:
        return MinimalityReport(False, f"deg a = {model.a.degree()} exceeds 4")
    if model.b.degree() > 6:
        return MinimalityReport(False, f"deg b = {model.b.degree()} exceeds 6")
    disc = model.discriminant_scale()
    if disc.is_zero():
        return MinimalityReport(False, "discriminant invariant vanishes identically")
    unit, factors = squarefree_factorization(disc)
    if len(factors) == 1 and factors[0][1] == 12 and factors[0][0].degree() == 1:
        root = -factors[0][0].coefficient(0) / factors[0][0].coefficient(1)
        return MinimalityReport(
            False, f"discriminant invariant is a twelfth power at lam = {root}"
        )
    for factor, _multiplicity in factors:
        if factor.degree() != 1:
            continue
        root = -factor.coefficient(0) / factor.coefficient(1)
        v_a = valuation_at(model.a, root) if not model.a.is_zero() else 12
        v_b = valuation_at(model.b, root) if not model.b.is_zero() else 12
        if v_a >= 4 and v_b >= 6:
            return MinimalityReport(
                False, f"non-minimal at lam = {rational_to_string(root)}"
            )
    inf = chart_at_infinity(model)
    disc_inf = inf.discriminant_scale()
    if not disc_inf.is_zero() and valuation_at(disc_inf, 0) > 0:
        v_a = valuation_at(inf.a, 0) if not inf.a.is_zero() else 12
        v_b = valuation_at(inf.b, 0) if not inf.b.is_zero() else 12
        if v_a >= 4 and v_b >= 6:
            return MinimalityReport(False, "non-minimal at infinity")
    return MinimalityReport(True)


# ---------------------------------------------------------------------------
# fiber classification


def classify_fiber_at(model: WeierstrassModel, place: Place) -> KodairaFiber:
    """Kodaira type at one place from exact coefficient valuations."""
    if place == "inf":
        return classify_fiber_at(chart_at_infinity(model), Fraction(0))
    point = place if isinstance(place, Fraction) else rational_from_string(str(place))
    disc = model.discriminant_scale()
    v_disc = valuation_at(disc, point)
    big = v_disc + 12  # stand-in for "infinite" valuation of a zero polynomial
    v_a = valuation_at(model.a, point) if not model.a.is_zero() else big
    v_b = valuation_at(model.b, point) if not model.b.is_zero() else big

    def fiber(name: str, index: int = 0) -> KodairaFiber:
        return KodairaFiber(name, index, min(v_a, big), min(v_b, big), v_disc)

    if v_disc == 0:
        return fiber("I0")
    if v_a == 0:
        return fiber("In", v_disc)
    if v_a >= 1 and v_b == 1:
        return fiber("II")
    if v_a == 1 and v_b >= 2:
        return fiber("III")
    if v_a >= 2 and v_b == 2:
        return fiber("IV")
    if v_a >= 2 and v_b >= 3 and v_disc == 6:
        return fiber("In*", 0)
    if v_a == 2 and v_b == 3 and v_disc > 6:
        return fiber("In*", v_disc - 6)
    if v_a >= 3 and v_b == 4:
        return fiber("IV*")
    if v_a == 3 and v_b >= 5:
        return fiber("III*")
    if v_a >= 4 and v_b == 5:
        return fiber("II*")
    if v_a >= 4 and v_b >= 6:
        return fiber("NonMinimal")
    raise FiberClassificationError(
        f"valuation triple (v_a, v_b, v_disc) = ({v_a}, {v_b}, {v_disc}) "
        "escaped the classification table"
    )


def fiber_configuration(model: WeierstrassModel) -> FiberConfiguration:
    """Classify every singular fiber over the projective line.

    Rational zeros of the discriminant invariant are classified one by one.
    An irreducible factor of degree >= 2 is accepted only when it is simple
    and coprime to both coefficients, which certifies a nodal fiber at each
    of its conjugate roots; anything else raises, reporting the factor,
    rather than guessing.  The Euler numbers must add up to 12.
    """
    report = is_globally_minimal(model)
    if not report.is_minimal:
        raise FiberClassificationError(f"model not globally minimal: {report.violation}")
    disc = model.discriminant_scale()
    _unit, factors = squarefree_factorization(disc)
    placements: List[FiberPlacement] = []
    for factor, multiplicity in factors:
        try:
            roots = rational_roots(factor)
        except ValueError as exc:
            raise FiberClassificationError(
                f"cannot enumerate rational places of factor {factor.to_pairs()}: {exc}"
            ) from exc
        remainder = factor
        for root in roots:
            remainder, _ = remainder.divmod_exact(
                UniPoly({1: 1, 0: -root}, factor.var)
            )
            placements.append(FiberPlacement(root, classify_fiber_at(model, root)))
        if remainder.degree() == 0:
            continue
        coprime_a = (
            not model.a.is_zero() and poly_gcd(remainder, model.a).degree() == 0
        )
        coprime_b = (
            not model.b.is_zero() and poly_gcd(remainder, model.b).degree() == 0
        )
        if multiplicity == 1 and coprime_a and coprime_b:
            nodal = KodairaFiber("In", 1, 0, 0, 1)
            placements.append(
                FiberPlacement(None, nodal, count=remainder.degree(), factor=remainder)
            )
            continue
        raise FiberClassificationError(
            "cannot certify fibers over irrational places: factor "
            f"{remainder.to_pairs()} has multiplicity {multiplicity}, "
            f"gcd with a {'constant' if coprime_a else 'non-constant'}, "
            f"gcd with b {'constant' if coprime_b else 'non-constant'}"
        )
    inf_fiber = classify_fiber_at(model, "inf")
    if inf_fiber.type_name != "I0":
        placements.append(FiberPlacement("inf", inf_fiber))

    def sort_key(p: FiberPlacement):
        if p.place == "inf":
            return (2, Fraction(0))
        if p.place is None:
            return (1, Fraction(p.factor.degree()))
        return (0, p.place)

    placements.sort(key=sort_key)
    config = FiberConfiguration(model, tuple(placements))
    total = config.euler_total()
    if total != 12:
        raise FiberClassificationError(
            f"Euler numbers sum to {total}, not 12; classification incomplete"
        )
    return config
