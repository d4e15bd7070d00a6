"""Exact sparse polynomial arithmetic over the rationals.

Three representations are provided, all backed by dictionaries with
:class:`fractions.Fraction` coefficients and with zero coefficients never
stored:

* :class:`UniPoly` — univariate polynomials, keyed by integer exponent.
  Each polynomial carries a variable tag (``"lam"`` for the base coordinate,
  ``"mu"`` for the coordinate at infinity) so that chart mix-ups fail loudly.
* :class:`BiPoly` — polynomials in the base coordinate and one fibre
  coordinate, keyed by exponent pairs.
* :class:`LaurentPoly` — Laurent polynomials in several variables, keyed by
  integer exponent vectors (negative exponents allowed).

The JSON interchange format stores a polynomial as a sorted list of
``[exponent(s), "num/den"]`` pairs; parsing is exact and round-trips
losslessly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

# Sparse coefficient maps. Values are always nonzero.
UniTerms = Dict[int, Fraction]
BiTerms = Dict[Tuple[int, int], Fraction]
LaurentTerms = Dict[Tuple[int, ...], Fraction]


def rational_from_string(text: str) -> Fraction:
    """Parse ``"num/den"`` (or ``"num"``) into an exact Fraction."""
    return Fraction(text)


def rational_to_string(value: Fraction) -> str:
    """Render a Fraction as ``"num/den"`` (or ``"num"`` when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _coerce(value: RationalLike) -> Fraction:
    if isinstance(value, str):
        return rational_from_string(value)
    return Fraction(value)


class UniPoly:
    """A sparse univariate polynomial with exact rational coefficients."""

    __slots__ = ("terms", "var")

    def __init__(self, terms: Mapping[int, RationalLike] | None = None,
                 var: str = "lam") -> None:
        clean: UniTerms = {}
        for exp, coeff in (terms or {}).items():
            c = _coerce(coeff)
            if c:
                if exp < 0:
                    raise ValueError("UniPoly exponents must be non-negative")
                clean[int(exp)] = c
        self.terms = clean
        self.var = var

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, var: str = "lam") -> "UniPoly":
        return cls({}, var)

    @classmethod
    def constant(cls, value: RationalLike, var: str = "lam") -> "UniPoly":
        return cls({0: value}, var)

    @classmethod
    def variable(cls, var: str = "lam") -> "UniPoly":
        return cls({1: 1}, var)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RationalLike], var: str = "lam") -> "UniPoly":
        """Build from ascending coefficients ``[c0, c1, ...]``."""
        return cls({i: c for i, c in enumerate(coeffs)}, var)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return max(self.terms) if self.terms else -1

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms)]

    def coefficient(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if not self.terms:
            return f"UniPoly(0, var={self.var!r})"
        parts = [f"{rational_to_string(c)}*{self.var}^{e}"
                 for e, c in sorted(self.terms.items())]
        return f"UniPoly({' + '.join(parts)})"

    def _check_var(self, other: "UniPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check_var(other)
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            c = terms.get(exp, Fraction(0)) + coeff
            if c:
                terms[exp] = c
            else:
                terms.pop(exp, None)
        return UniPoly(terms, self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly | RationalLike") -> "UniPoly":
        if not isinstance(other, UniPoly):
            scalar = _coerce(other)
            return UniPoly({e: c * scalar for e, c in self.terms.items()}, self.var)
        self._check_var(other)
        terms: UniTerms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = terms.get(e, Fraction(0)) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    terms.pop(e, None)
        return UniPoly(terms, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly({e - 1: c * e for e, c in self.terms.items() if e > 0},
                       self.var)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return self(inner) by Horner evaluation on sorted exponents."""
        result = UniPoly.zero(inner.var)
        prev_exp = None
        for exp in sorted(self.terms, reverse=True):
            if prev_exp is not None:
                result = result * inner ** (prev_exp - exp)
            result = result + UniPoly.constant(self.terms[exp], inner.var)
            prev_exp = exp
        if prev_exp is not None and prev_exp > 0:
            result = result * inner ** prev_exp
        return result

    def shift(self, offset: RationalLike) -> "UniPoly":
        """Return p(x + offset)."""
        return self.compose(UniPoly({1: 1, 0: offset}, self.var))

    def evaluate(self, point: RationalLike) -> Fraction:
        x = _coerce(point)
        acc = Fraction(0)
        prev_exp = None
        for exp in sorted(self.terms, reverse=True):
            if prev_exp is not None:
                acc *= x ** (prev_exp - exp)
            acc += self.terms[exp]
            prev_exp = exp
        if prev_exp is not None and prev_exp > 0:
            acc *= x ** prev_exp
        return acc

    def evaluate_complex(self, point: complex) -> complex:
        acc = 0j
        prev_exp = None
        for exp in sorted(self.terms, reverse=True):
            if prev_exp is not None:
                acc *= point ** (prev_exp - exp)
            acc += complex(self.terms[exp])
            prev_exp = exp
        if prev_exp is not None and prev_exp > 0:
            acc *= point ** prev_exp
        return acc

    def divmod_exact(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Polynomial long division; returns (quotient, remainder)."""
        self._check_var(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quotient: UniTerms = {}
        remainder = dict(self.terms)
        ddeg = divisor.degree()
        dlc = divisor.leading_coefficient()
        while remainder and max(remainder) >= ddeg:
            rdeg = max(remainder)
            factor = remainder[rdeg] / dlc
            quotient[rdeg - ddeg] = factor
            for exp, coeff in divisor.terms.items():
                e = exp + rdeg - ddeg
                c = remainder.get(e, Fraction(0)) - factor * coeff
                if c:
                    remainder[e] = c
                else:
                    remainder.pop(e, None)
        return UniPoly(quotient, self.var), UniPoly(remainder, self.var)

    # -- serialization -------------------------------------------------------

    def to_pairs(self) -> List[List[object]]:
        return [[e, rational_to_string(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[object]], var: str = "lam") -> "UniPoly":
        return cls({int(e): rational_from_string(str(c)) for e, c in pairs}, var)


class BiPoly:
    """A sparse polynomial in the base coordinate and one fibre coordinate."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], RationalLike] | None = None) -> None:
        clean: BiTerms = {}
        for key, coeff in (terms or {}).items():
            c = _coerce(coeff)
            if c:
                el, ex = key
                if el < 0 or ex < 0:
                    raise ValueError("BiPoly exponents must be non-negative")
                clean[(int(el), int(ex))] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls({})

    @classmethod
    def constant(cls, value: RationalLike) -> "BiPoly":
        return cls({(0, 0): value})

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "BiPoly":
        return cls({(e, 0): c for e, c in p.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = [f"{rational_to_string(c)}*lam^{el}*x^{ex}"
                 for (el, ex), c in sorted(self.terms.items())]
        return f"BiPoly({' + '.join(parts)})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            c = terms.get(key, Fraction(0)) + coeff
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return BiPoly(terms)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly | RationalLike") -> "BiPoly":
        if not isinstance(other, BiPoly):
            scalar = _coerce(other)
            return BiPoly({k: c * scalar for k, c in self.terms.items()})
        terms: BiTerms = {}
        for (l1, x1), c1 in self.terms.items():
            for (l2, x2), c2 in other.terms.items():
                key = (l1 + l2, x1 + x2)
                c = terms.get(key, Fraction(0)) + c1 * c2
                if c:
                    terms[key] = c
                else:
                    terms.pop(key, None)
        return BiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def x_degree(self) -> int:
        return max((ex for (_, ex) in self.terms), default=-1)

    def x_coefficient(self, k: int, var: str = "lam") -> UniPoly:
        """Coefficient of the k-th fibre-coordinate power, as a UniPoly."""
        return UniPoly({el: c for (el, ex), c in self.terms.items() if ex == k},
                       var)

    def divide_by_x_power(self, k: int) -> "BiPoly":
        """Exact division by x^k; raises if any term has x-degree below k."""
        terms: BiTerms = {}
        for (el, ex), c in self.terms.items():
            if ex < k:
                raise ValueError(f"term with x-exponent {ex} not divisible by x^{k}")
            terms[(el, ex - k)] = c
        return BiPoly(terms)

    def to_pairs(self) -> List[List[object]]:
        return [[el, ex, rational_to_string(c)]
                for (el, ex), c in sorted(self.terms.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[object]]) -> "BiPoly":
        return cls({(int(el), int(ex)): rational_from_string(str(c))
                    for el, ex, c in pairs})


class LaurentPoly:
    """A sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[Tuple[int, ...], RationalLike] | None = None,
                 nvars: int = 1) -> None:
        clean: LaurentTerms = {}
        for key, coeff in (terms or {}).items():
            c = _coerce(coeff)
            if c:
                if len(key) != nvars:
                    raise ValueError("exponent vector length mismatch")
                clean[tuple(int(e) for e in key)] = c
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: RationalLike, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: RationalLike = 1,
                 nvars: int | None = None) -> "LaurentPoly":
        exps = tuple(int(e) for e in exponents)
        return cls({exps: coeff}, nvars if nvars is not None else len(exps))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if not self.terms:
            return f"LaurentPoly(0, nvars={self.nvars})"
        parts = [f"{rational_to_string(c)}*y^{list(e)}"
                 for e, c in sorted(self.terms.items())]
        return f"LaurentPoly({' + '.join(parts)})"

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("Laurent polynomials in different variable counts")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            c = terms.get(key, Fraction(0)) + coeff
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return LaurentPoly(terms, self.nvars)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            scalar = _coerce(other)
            return LaurentPoly({k: c * scalar for k, c in self.terms.items()},
                               self.nvars)
        self._check(other)
        terms: LaurentTerms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(key, Fraction(0)) + c1 * c2
                if c:
                    terms[key] = c
                else:
                    terms.pop(key, None)
        return LaurentPoly(terms, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(int(e) for e in exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def substitute_monomials(self, images: Sequence[Sequence[int]]) -> "LaurentPoly":
        """Apply the monomial substitution y_i -> prod_j z_j^images[i][j]."""
        if len(images) != self.nvars:
            raise ValueError("need one image exponent vector per variable")
        mvars = len(images[0])
        if any(len(img) != mvars for img in images):
            raise ValueError("image exponent vectors must share a length")
        terms: LaurentTerms = {}
        for exps, coeff in self.terms.items():
            key = tuple(sum(e * img[j] for e, img in zip(exps, images))
                        for j in range(mvars))
            c = terms.get(key, Fraction(0)) + coeff
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return LaurentPoly(terms, mvars)

    def to_pairs(self) -> List[List[object]]:
        return [[list(e), rational_to_string(c)]
                for e, c in sorted(self.terms.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[object]], nvars: int) -> "LaurentPoly":
        return cls({tuple(int(x) for x in e): rational_from_string(str(c))
                    for e, c in pairs}, nvars)


# ---------------------------------------------------------------------------
# operations


def valuation_at(p: UniPoly, point: RationalLike) -> int:
    """Order of vanishing of ``p`` at a rational point (exact division count).

    Raises ``ValueError`` for the zero polynomial, whose order is undefined.
    """
    if p.is_zero():
        raise ValueError("valuation of the zero polynomial is undefined")
    c = _coerce(point)
    if c == 0:
        return min(p.terms)
    linear = UniPoly({1: 1, 0: -c}, p.var)
    order = 0
    current = p
    while True:
        quotient, remainder = current.divmod_exact(linear)
        if not remainder.is_zero():
            return order
        order += 1
        current = quotient


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    p._check_var(q)
    a, b = p, q
    while not b.is_zero():
        _, r = a.divmod_exact(b)
        a, b = b, r
    if a.is_zero():
        return a
    lc = a.leading_coefficient()
    return a * (Fraction(1) / lc)


def squarefree_factorization(p: UniPoly) -> Tuple[Fraction, List[Tuple[UniPoly, int]]]:
    """Yun decomposition ``p = unit * prod f_i^i`` with squarefree monic f_i.

    Returns ``(unit, [(f_i, i), ...])`` listing only non-constant factors,
    ordered by multiplicity.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.leading_coefficient()
    monic = p * (Fraction(1) / unit)
    if monic.degree() == 0:
        return unit, []
    dp = monic.derivative()
    a = poly_gcd(monic, dp)
    b, _ = monic.divmod_exact(a)
    c, _ = dp.divmod_exact(a)
    d = c - b.derivative()
    factors: List[Tuple[UniPoly, int]] = []
    multiplicity = 1
    while b.degree() > 0:
        f = poly_gcd(b, d)
        if f.degree() > 0:
            factors.append((f, multiplicity))
        b, _ = b.divmod_exact(f)
        c, _ = d.divmod_exact(f)
        d = c - b.derivative()
        multiplicity += 1
    return unit, factors


def _positive_divisors(n: int, trial_bound: int = 10 ** 6) -> List[int]:
    """All positive divisors of ``|n|`` by trial division.

    Raises ValueError when ``n`` has two prime factors above the trial
    bound, in which case the divisor list cannot be certified complete.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no finite divisor list")
    prime_powers: Dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        if p > trial_bound:
            raise ValueError(f"cannot certify the divisors of {n} by trial division")
        while m % p == 0:
            prime_powers[p] = prime_powers.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        prime_powers[m] = prime_powers.get(m, 0) + 1
    divisors = [1]
    for prime, mult in prime_powers.items():
        divisors = [d * prime ** k for d in divisors for k in range(mult + 1)]
    return sorted(divisors)


def rational_roots(p: UniPoly) -> List[Fraction]:
    """All rational roots of ``p``, each listed once, in ascending order.

    Candidates come from the rational-root bound applied to the primitive
    integer form of ``p``; every candidate is confirmed by exact evaluation,
    so the returned list is complete.  Raises ValueError for the zero
    polynomial or when a coefficient resists factorization.
    """
    if p.is_zero():
        raise ValueError("every point is a root of the zero polynomial")
    roots: List[Fraction] = []
    shift = min(p.terms)
    if shift > 0:
        roots.append(Fraction(0))
        p = UniPoly({e - shift: c for e, c in p.terms.items()}, p.var)
    if p.degree() == 0:
        return roots
    denominator_lcm = 1
    for c in p.terms.values():
        g = gcd(denominator_lcm, c.denominator)
        denominator_lcm = denominator_lcm // g * c.denominator
    ints = {e: int(c * denominator_lcm) for e, c in p.terms.items()}
    content = 0
    for c in ints.values():
        content = gcd(content, c)
    lead = ints[max(ints)] // content
    trail = ints[min(ints)] // content
    for num in _positive_divisors(trail):
        for den in _positive_divisors(lead):
            if gcd(num, den) != 1:
                continue
            for candidate in (Fraction(num, den), Fraction(-num, den)):
                if p.evaluate(candidate) == 0:
                    roots.append(candidate)
    return sorted(set(roots))


def disc_cubic(a: UniPoly, b: UniPoly) -> UniPoly:
    """Discriminant-scale invariant 4a^3 + 27b^2 of y^2 = x^3 + a x + b."""
    return a ** 3 * 4 + b ** 2 * 27


def disc_quadratic_in_y(A: BiPoly, B: BiPoly, C: BiPoly) -> BiPoly:
    """Discriminant B^2 - 4AC of the quadratic A y^2 + B y + C."""
    return B ** 2 - A * C * 4


def depress_cubic(A: UniPoly, B: UniPoly, C: UniPoly, D: UniPoly) -> Tuple[UniPoly, UniPoly]:
    """Reduce ``w^2 = A x^3 + B x^2 + C x + D`` to ``y^2 = X^3 + a X + b``.

    The substitution (x, w) -> ((X - B/3)/A, Y/A) clears the leading
    coefficient and the quadratic term; the exact output scaling is

        a = C*A - B^2/3,      b = D*A^2 - B*C*A/3 + 2 B^3/27.
    """
    third = Fraction(1, 3)
    a = C * A - B ** 2 * third
    b = D * A ** 2 - B * C * A * third + B ** 3 * Fraction(2, 27)
    return a, b
