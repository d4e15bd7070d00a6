"""Vanishing-cycle pipeline tests: ordering, classes, certificates, exports."""

from __future__ import annotations

import functools
import json
import math
from fractions import Fraction

import pytest

from dpmirror.exactpoly import UniPoly
from dpmirror.pathnum import NumericsError, PathPolyline
from dpmirror.vancycles import (
    HomologyClass,
    VanishingData,
    critical_values_ordered,
    infinity_cycle,
    reference_vanishing_classes,
    render_delta_svg,
    seifert_gram,
    total_monodromy,
    vanishing_classes,
)
from dpmirror.weierstrass import WeierstrassModel, catalog, reference_nodal_place

NODAL_PLACES = {3: 27.0, 2: 64.0, 1: 432.0}
VALUE_COUNTS = {3: 9, 2: 10, 1: 11}

# Frozen upper-triangular Seifert Gram of the degree-3 class sequence.
GRAM3_EXPECTED = [
    [1, -1, 1, -1, 1, -1, 1, -1, 1],
    [0, 1, 1, 0, 1, 0, 1, 0, 1],
    [0, 0, 1, -1, 0, -1, 0, -1, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 1, -1, 0, -1, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
]


@functools.lru_cache(maxsize=None)
def _computed(d: int) -> VanishingData:
    return vanishing_classes(d)


def _ordered_values(d: int):
    model = catalog(d, Fraction(1, 100))
    anchor = complex(float(reference_nodal_place(d)), 0.0)
    return critical_values_ordered(model, anchor)


# ---------------------------------------------------------------------------
# critical value ordering


def test_critical_value_counts_and_nodal_anchor():
    for d, count in VALUE_COUNTS.items():
        values = _ordered_values(d)
        assert len(values) == count
        assert abs(values[0] - NODAL_PLACES[d]) < 1e-2


def test_critical_values_sweep_clockwise_from_the_anchor():
    values = _ordered_values(3)
    theta = math.atan2(values[0].imag, values[0].real)

    def sweep_angle(z: complex) -> float:
        return theta - ((theta - math.atan2(z.imag, z.real)) % (2 * math.pi))

    keys = [(-sweep_angle(z), abs(z)) for z in values[1:]]
    assert keys == sorted(keys)


def test_critical_values_default_anchor_takes_largest_modulus():
    model = catalog(3, Fraction(1, 100))
    values = critical_values_ordered(model)
    assert values == _ordered_values(3)


def test_critical_values_reject_degenerate_invariants():
    flat = WeierstrassModel(UniPoly({}), UniPoly({0: Fraction(1)}))
    with pytest.raises(NumericsError, match="constant"):
        critical_values_ordered(flat)
    doubled = WeierstrassModel(UniPoly({}), UniPoly({2: Fraction(1), 1: Fraction(-1)}))
    with pytest.raises(NumericsError, match="separable"):
        critical_values_ordered(doubled)


# ---------------------------------------------------------------------------
# the full pipeline


def test_classes_match_the_reference_sequences():
    for d in (3, 2, 1):
        data = _computed(d)
        assert data.epsilon == Fraction(1, 100)
        assert len(data.critical_values) == VALUE_COUNTS[d]
        assert [c.to_pair() for c in data.classes] == [
            c.to_pair() for c in reference_vanishing_classes(d)
        ]
        assert max(data.residuals) < 1e-6
        for cls in data.classes:
            assert math.gcd(cls.m, cls.n) == 1


def test_vanishing_arcs_join_roots_of_the_base_fiber():
    for d in (3, 2, 1):
        data = _computed(d)
        model = catalog(d, data.epsilon)
        a0 = model.a.evaluate_complex(0j)
        b0 = model.b.evaluate_complex(0j)
        for delta, pair in zip(data.deltas, data.colliding_pairs):
            i, j = pair
            assert 0 <= i < 3 and 0 <= j < 3 and i != j
            for endpoint in (delta.nodes[0], delta.nodes[-1]):
                assert abs(endpoint**3 + a0 * endpoint + b0) < 1e-8
            assert delta.nodes[0] != delta.nodes[-1]


def test_first_class_and_the_cycle_over_infinity():
    for d in (3, 2, 1):
        data = _computed(d)
        assert data.classes[0] == HomologyClass(1, 1)
        assert infinity_cycle(list(data.classes), d) == HomologyClass(0, 1)
        total = total_monodromy(list(data.classes))
        (p, q), (r, s) = total.rows
        assert p + s == 2
        assert total.rows != ((1, 0), (0, 1))


def test_seifert_gram_is_unimodular_and_matches_the_frozen_matrix():
    assert seifert_gram(list(_computed(3).classes)) == GRAM3_EXPECTED
    for d in (3, 2, 1):
        gram = seifert_gram(list(_computed(d).classes))
        for i, row in enumerate(gram):
            assert row[i] == 1
            assert all(entry == 0 for entry in row[:i])


# ---------------------------------------------------------------------------
# the arc guard and input validation


def test_guard_retries_bump_epsilon_until_the_arcs_clear():
    data = vanishing_classes(2, Fraction(1, 500))
    assert data.epsilon == Fraction(1, 500) * Fraction(18, 17) ** 3
    assert [c.to_pair() for c in data.classes] == [
        c.to_pair() for c in reference_vanishing_classes(2)
    ]


def test_guard_retries_exhaust_with_a_clear_error():
    with pytest.raises(NumericsError, match="arc guard kept failing"):
        vanishing_classes(2, Fraction(1, 1000))


def test_rejects_unknown_degree_and_bad_epsilon():
    with pytest.raises(ValueError, match="degree"):
        vanishing_classes(4)
    with pytest.raises(NumericsError, match="positive"):
        vanishing_classes(3, Fraction(0))
    with pytest.raises(NumericsError, match="positive"):
        vanishing_classes(3, Fraction(-1, 100))


def test_vanishing_data_validates_records():
    arc = PathPolyline((0j, 1 + 0j))
    fields = dict(
        d=3,
        epsilon=Fraction(1, 100),
        critical_values=(1 + 0j,),
        arcs=(arc,),
        colliding_pairs=((0, 1),),
        deltas=(arc,),
        classes=(HomologyClass(1, 1),),
        residuals=(0.0,),
        periods=(1j, 1 + 0j),
    )
    VanishingData(**fields)
    with pytest.raises(NumericsError, match="primitive"):
        VanishingData(**{**fields, "classes": (HomologyClass(2, 2),)})
    with pytest.raises(NumericsError, match="residual"):
        VanishingData(**{**fields, "residuals": (1e-3,)})
    with pytest.raises(NumericsError, match="lengths"):
        VanishingData(**{**fields, "arcs": ()})


# ---------------------------------------------------------------------------
# exports


def test_to_json_reports_the_certified_fields():
    data = _computed(3)
    report = data.to_json()
    assert set(report) == {
        "d", "epsilon", "critical_values", "colliding_pairs",
        "classes", "residuals", "periods",
    }
    assert report["epsilon"] == "1/100"
    assert report["classes"][0] == [1, 1]
    assert len(report["critical_values"]) == 9
    again = vanishing_classes(3).to_json()
    assert json.dumps(report, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_render_delta_svg_is_deterministic():
    data = _computed(3)
    svg = render_delta_svg(data)
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 9
    assert svg.count("<circle") == 3
    assert render_delta_svg(data) == svg


def test_render_delta_svg_requires_arcs():
    empty = VanishingData(
        d=3,
        epsilon=Fraction(1, 100),
        critical_values=(),
        arcs=(),
        colliding_pairs=(),
        deltas=(),
        classes=(),
        residuals=(),
        periods=(1j, 1 + 0j),
    )
    with pytest.raises(NumericsError, match="nothing to draw"):
        render_delta_svg(empty)
