"""Tests for period series expansion and the mirror coefficient check."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpmirror.exactpoly import LaurentPoly
from dpmirror.periods import (
    FanoWeightData,
    MirrorCheckReport,
    PowerSeries,
    classical_period,
    mirror_check,
    przyjalkowski_g,
    quantum_period,
    regularize,
    weight_data,
)

FR = Fraction

# Frozen expansions to order 12 (exact integers once regularized).
REGULARIZED = {
    1: [
        1, 0, 10260, 2021280, 618874020, 184450426560, 57876331467600,
        18570232920355200, 6075387296446904100, 2016643273329626390400,
        677241013321962402561360, 229600654240460636054275200,
        78455433542570488178245270800,
    ],
    2: [
        1, 0, 276, 6816, 314532, 12853440, 569409360, 25533244800,
        1170019563300, 54340810769280, 2553325640356176,
        121090645167972480, 5787457749281987856,
    ],
    3: [
        1, 0, 54, 492, 9882, 158760, 2879640, 51982560, 964347930,
        18091565520, 343559141604, 6582773541960, 127111745010096,
    ],
}

# The dressed (unregularized) series for degree 3, kept exact.
DRESSED_D3 = [
    FR(1), FR(0), FR(27), FR(82), FR(1647, 4), FR(1323), FR(7999, 2),
    FR(10314), FR(1530711, 64), FR(10768789, 216), FR(151481103, 1600),
    FR(26385977, 160), FR(11463901967, 43200),
]

ALPHAS = {1: FR(60), 2: FR(12), 3: FR(6)}


# ---------------------------------------------------------------------------
# weight data


def test_catalog_weight_data():
    assert weight_data(1).weights == (1, 1, 2, 3)
    assert weight_data(1).constraint_degree == 6
    assert weight_data(2).weights == (1, 1, 1, 2)
    assert weight_data(3).weights == (1, 1, 1, 1)
    assert all(weight_data(d).index == 1 for d in (1, 2, 3))


def test_weight_data_rejects_nonpositive_index():
    with pytest.raises(ValueError, match="index"):
        FanoWeightData((1, 1, 1, 1), 4)
    with pytest.raises(ValueError, match="index"):
        FanoWeightData((1, 1, 1, 1), 5)


def test_weight_data_rejects_unpartitionable_degree():
    with pytest.raises(ValueError, match="subset"):
        FanoWeightData((2, 2, 2, 2), 5)


def test_weight_data_accepts_higher_index():
    datum = FanoWeightData((1, 1, 1, 1), 2)
    assert datum.index == 2
    series, alpha = quantum_period(datum, 6)
    assert alpha == 0
    assert series.coefficient(0) == 1 and series.coefficient(1) == 0


# ---------------------------------------------------------------------------
# quantum period


@pytest.mark.parametrize("d", [1, 2, 3])
def test_alpha_values(d):
    _series, alpha = quantum_period(weight_data(d), 4)
    assert alpha == ALPHAS[d]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_quantum_period_normalization(d):
    series, _alpha = quantum_period(weight_data(d), 6)
    assert series.coefficient(0) == 1
    assert series.coefficient(1) == 0


def test_dressed_series_d3_frozen():
    series, _alpha = quantum_period(weight_data(3), 12)
    assert list(series.coefficients) == DRESSED_D3


def test_quantum_period_requires_order_two():
    with pytest.raises(ValueError):
        quantum_period(weight_data(3), 1)


# ---------------------------------------------------------------------------
# regularization


def test_regularize_definition():
    series = PowerSeries((FR(1), FR(0), FR(5)))
    assert regularize(series).coefficients == (FR(1), FR(0), FR(10))


def test_regularize_zero_series():
    series = PowerSeries((FR(0),) * 5)
    assert regularize(series).coefficients == (FR(0),) * 5


@pytest.mark.parametrize("d", [1, 2, 3])
def test_regularized_series_frozen(d):
    series, _alpha = quantum_period(weight_data(d), 12)
    assert [c for c in regularize(series).coefficients] == REGULARIZED[d]


# ---------------------------------------------------------------------------
# Laurent potential


def test_potential_d3_monomials():
    g = przyjalkowski_g(3)
    assert len(g.terms) == 10
    assert g.constant_term() == 6
    # leading corner monomials of (1+y3+y4)^3 / (y3 y4)
    assert g.coefficient((2, -1)) == 1
    assert g.coefficient((-1, -1)) == 1


def test_potential_d1_monomials():
    g = przyjalkowski_g(1)
    assert len(g.terms) == 28
    assert g.coefficient((-2, -3)) == 1
    assert g.coefficient((4, -3)) == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_potential_constant_term_equals_alpha(d):
    _series, alpha = quantum_period(weight_data(d), 2)
    assert przyjalkowski_g(d).constant_term() == alpha


# ---------------------------------------------------------------------------
# classical period


def test_classical_period_central_binomials():
    y = LaurentPoly.monomial((1,))
    f = y + LaurentPoly.monomial((-1,))
    series = classical_period(f, 8)
    assert list(series.coefficients) == [1, 0, 2, 0, 6, 0, 20, 0, 70]


def test_classical_period_of_zero():
    series = classical_period(LaurentPoly.zero(2), 4)
    assert list(series.coefficients) == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_shifted_potential_has_vanishing_linear_constant(d):
    _series, alpha = quantum_period(weight_data(d), 2)
    shifted = przyjalkowski_g(d) - LaurentPoly.constant(alpha, 2)
    assert classical_period(shifted, 1).coefficient(1) == 0


# ---------------------------------------------------------------------------
# mirror check


@pytest.mark.parametrize("d,order", [(3, 12), (2, 10), (1, 8)])
def test_mirror_check_passes(d, order):
    report = mirror_check(d, order)
    assert isinstance(report, MirrorCheckReport)
    assert report.passed and report.first_mismatch is None
    assert report.alpha == ALPHAS[d]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_mirror_check_full_order_matches_frozen(d):
    report = mirror_check(d, 12)
    assert report.passed
    assert list(report.regularized.coefficients) == REGULARIZED[d]
    assert list(report.classical.coefficients) == REGULARIZED[d]


# ---------------------------------------------------------------------------
# series type


def test_power_series_truncate_and_bounds():
    series = PowerSeries((FR(1), FR(2), FR(3)))
    assert series.order == 2
    assert series.truncate(1).coefficients == (FR(1), FR(2))
    with pytest.raises(ValueError):
        series.truncate(5)
    with pytest.raises(IndexError):
        series.coefficient(3)


def test_power_series_json_round_trip():
    series = PowerSeries((FR(1), FR(-3, 2), FR(0)))
    assert PowerSeries.from_json(series.to_json()) == series


# ---------------------------------------------------------------------------
# properties


def _random_unimodular(shears) -> list:
    matrix = [[1, 0], [0, 1]]
    for kind, n in shears:
        if kind == 0:
            matrix = [
                [matrix[0][0] + n * matrix[1][0], matrix[0][1] + n * matrix[1][1]],
                matrix[1],
            ]
        else:
            matrix = [
                matrix[0],
                [matrix[1][0] + n * matrix[0][0], matrix[1][1] + n * matrix[0][1]],
            ]
    return matrix


@given(
    d=st.sampled_from([1, 2, 3]),
    shears=st.lists(
        st.tuples(st.sampled_from([0, 1]), st.integers(min_value=-2, max_value=2)),
        max_size=4,
    ),
)
@settings(max_examples=25, deadline=None)
def test_classical_period_invariant_under_unimodular_substitution(d, shears):
    matrix = _random_unimodular(shears)
    _series, alpha = quantum_period(weight_data(d), 2)
    f = przyjalkowski_g(d) - LaurentPoly.constant(alpha, 2)
    g = f.substitute_monomials(matrix)
    assert classical_period(g, 8) == classical_period(f, 8)
