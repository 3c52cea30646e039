import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.newton.application.property_trials import random_bounded_slope, random_pr_pure
from app.newton.domain.errors import (
    ConstantPolynomial,
    EmptyInput,
    HypothesisViolation,
    NotPrPure,
    PrimeMismatch,
    SpanMismatch,
    ZeroConstantTerm,
)
from app.newton.domain.exact_number import ord_rat
from app.newton.domain.newton_polygon import (
    LowerBoundRegion,
    NewtonPolygon,
    boundary_height,
    chord_slope,
    lower_convex_hull,
    newton_polygon,
    stretch_polygon,
)
from app.newton.domain.polygon_laws import (
    PurityClass,
    check_stretch_hypotheses,
    classify_purity,
    predict_composition,
    predict_product,
    region_contains,
    union_lower_bound,
)
from app.newton.domain.polynomial import compose, power
from app.newton.domain.polynomial_parser import parse_polynomial


def np_of(text: str, p: int) -> NewtonPolygon:
    return newton_polygon(parse_polynomial(text), p)


def test_classify_eisenstein():
    report = classify_purity(parse_polynomial("x^2 - 2"), 2)
    assert report.classification == PurityClass.DUMAS
    assert report.slope == Fraction(-1, 2)
    assert report.r == 1
    assert report.height == 1
    assert report.is_strict_dumas


def test_classify_pr_pure_without_dumas():
    """x^4 + 4 = (x^2 − 2x + 2)(x^2 + 2x + 2) 는 p^2-순수지만 Dumas 아님"""
    report = classify_purity(parse_polynomial("x^4 + 4"), 2)
    assert report.classification == PurityClass.PR_PURE
    assert report.r == 2
    assert not report.is_dumas
    assert parse_polynomial("(x^2 - 2*x + 2)*(x^2 + 2*x + 2)") == parse_polynomial("x^4 + 4")


def test_classify_not_pure():
    report = classify_purity(parse_polynomial("5 + x^2 + 125*x^6"), 5)
    assert report.classification == PurityClass.NOT_PURE
    assert not report.is_pure
    assert report.describe() == "not pure (2 segments)"


def test_dumas_height_is_invariant_under_scaling():
    """상수배는 다각형을 수직 이동만 시키므로 높이 분류는 같음"""
    report = classify_purity(parse_polynomial("2*x^3 + 8"), 2)
    assert report.classification == PurityClass.DUMAS
    assert report.height == 2
    assert report.r is None
    assert not report.is_strict_dumas


def test_classify_rejects_degenerate_input():
    with pytest.raises(ConstantPolynomial):
        classify_purity(parse_polynomial("7"), 7)
    with pytest.raises(ZeroConstantTerm):
        classify_purity(parse_polynomial("x^2 + 2*x"), 2)


def test_product_of_three_eisenstein_factors():
    a, b, c = np_of("x^2 - 2", 2), np_of("x^3 - 2", 2), np_of("x^4 - 2", 2)
    predicted = predict_product(predict_product(a, b), c)
    assert predicted.slopes == [Fraction(-1, 2), Fraction(-1, 3), Fraction(-1, 4)]
    assert [s.length for s in predicted.segments] == [2, 3, 4]
    actual = np_of("(x^2 - 2)*(x^3 - 2)*(x^4 - 2)", 2)
    assert predicted == actual


def test_product_merges_equal_slopes():
    a = np_of("x^2 - 2", 2)
    merged = predict_product(a, a)
    assert merged.vertices == ((0, 2), (4, 0))
    assert merged == newton_polygon(power(parse_polynomial("x^2 - 2"), 2), 2)


def test_product_with_unit_factor():
    a = np_of("5 + x^2 + 125*x^6", 5)
    assert predict_product(a, np_of("1", 5)) == a


def test_product_rejects_mixed_primes():
    with pytest.raises(PrimeMismatch):
        predict_product(np_of("x - 2", 2), np_of("x - 3", 3))


def test_union_region_of_sum_example():
    region = union_lower_bound([np_of("3 + x^2 + 9*x^3", 3), np_of("9 + x + 3*x^3", 3)])
    assert region.vertices == ((0, 1), (1, 0), (2, 0), (3, 1))
    total = np_of("12 + x + x^2 + 12*x^3", 3)
    assert region_contains(total, region)
    assert total.vertices == region.vertices


def test_union_singleton_and_idempotence():
    a = np_of("5 + x^2 + 125*x^6", 5)
    assert union_lower_bound([a]) == LowerBoundRegion.of(a)
    assert union_lower_bound([a, a]) == LowerBoundRegion.of(a)
    assert region_contains(a, LowerBoundRegion.of(a))


def test_union_errors():
    with pytest.raises(EmptyInput):
        union_lower_bound([])
    with pytest.raises(PrimeMismatch):
        union_lower_bound([np_of("x - 2", 2), np_of("x - 3", 3)])


def test_region_contains_detects_point_below():
    region = union_lower_bound([np_of("3 + x^2 + 9*x^3", 3), np_of("9 + x + 3*x^3", 3)])
    assert not region_contains(NewtonPolygon(3, ((0, 0), (3, 1))), region)


def test_region_contains_span_mismatch():
    region = LowerBoundRegion(((0, 1), (3, 1)))
    with pytest.raises(SpanMismatch):
        region_contains(NewtonPolygon(3, ((0, 1), (4, 0))), region)


def test_composition_prediction_matches_actual():
    f = parse_polynomial("5 + x^2 + 125*x^6")
    g = parse_polynomial("x^3 + 5")
    predicted = predict_composition(newton_polygon(f, 5), newton_polygon(g, 5))
    assert predicted.vertices == ((0, 1), (6, 0), (18, 3))
    assert predicted.slopes == [Fraction(-1, 6), Fraction(1, 4)]
    assert predicted == newton_polygon(compose(f, g), 5)


def test_self_composition_of_dumas_polynomial():
    g = parse_polynomial("x^2 + 2")
    predicted = predict_composition(newton_polygon(g, 2), newton_polygon(g, 2))
    assert predicted.vertices == ((0, 1), (4, 0))
    assert predicted == newton_polygon(compose(g, g), 2)


def test_steep_slope_violates_hypotheses():
    """기울기 크기 2 ≥ r = 1 이면 신장 예측이 실제와 다름"""
    f = parse_polynomial("25 + x + 25*x^2")
    g = parse_polynomial("5 + x^2")
    np_f, np_g = newton_polygon(f, 5), newton_polygon(g, 5)
    with pytest.raises(HypothesisViolation) as info:
        predict_composition(np_f, np_g)
    assert info.value.slope == 2
    assert info.value.r == 1
    assert str(info.value) == "hypotheses violated: |slope 2| >= r=1"

    actual = newton_polygon(compose(f, g), 5)
    assert actual.vertices == ((0, 1), (2, 0), (4, 2))
    assert stretch_polygon(np_f, 2).vertices == ((0, 2), (2, 0), (4, 2))
    assert stretch_polygon(np_f, 2) != actual


def test_negative_constant_valuation_is_not_pr_pure():
    g = parse_polynomial("x^2 + 1/3")
    with pytest.raises(NotPrPure):
        check_stretch_hypotheses(newton_polygon(g, 3), newton_polygon(g, 3))


def test_unit_constant_partner_is_not_pr_pure():
    """g = 1 + p·x^2 은 ord_p g(0) = 0 이라 p^r-순수가 아님"""
    with pytest.raises(NotPrPure):
        check_stretch_hypotheses(np_of("5 + x^2", 5), np_of("1 + 5*x^2", 5))


def test_stretch_hypotheses_reject_zero_root():
    with pytest.raises(ZeroConstantTerm):
        check_stretch_hypotheses(np_of("x^2 + x", 2), np_of("x^2 + 2", 2))


def test_pr_pure_coefficients_are_p_integral():
    rng = random.Random(11)
    for _ in range(300):
        p = rng.choice((2, 3, 5, 7))
        g = random_pr_pure(rng, p, rng.randint(1, 4), rng.randint(1, 8))
        r = check_stretch_hypotheses(np_of("x + 1", p), newton_polygon(g, p))
        assert r >= 1
        assert all(ord_rat(c, p) >= 0 for c in g.coefficients if c != 0)


def test_stretch_law_on_seeded_samples():
    rng = random.Random(5)
    for _ in range(200):
        p = rng.choice((2, 3, 5, 7))
        r = rng.randint(1, 3)
        f = random_bounded_slope(rng, p, r, 8)
        g = random_pr_pure(rng, p, r, rng.randint(2, 4))
        predicted = predict_composition(newton_polygon(f, p), newton_polygon(g, p))
        assert predicted == newton_polygon(compose(f, g), p)


chains = st.lists(
    st.tuples(st.integers(1, 6), st.integers(-20, 20)), min_size=1, max_size=10
)


@given(st.integers(1, 5), chains)
@settings(max_examples=300)
def test_chord_of_bounded_slope_chain_is_bounded(r, steps):
    """모든 기울기 크기가 r 미만이면 양 끝을 잇는 기울기도 r 미만"""
    points = [(0, 0)]
    for width, rise in steps:
        rise = max(-(r * width - 1), min(r * width - 1, rise))
        points.append((points[-1][0] + width, points[-1][1] + rise))
    polygon = NewtonPolygon(2, tuple(lower_convex_hull(points)))
    assert all(abs(slope) < r for slope in polygon.slopes)
    if len(polygon.vertices) > 1:
        assert abs(chord_slope(polygon)) < r


@given(
    st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 10)), min_size=2, max_size=15)
)
@settings(max_examples=300)
def test_hull_of_higher_points_stays_above(pairs):
    """점별로 위에 있는 점 집합의 껍질은 공통 x 에서 아래 집합의 껍질 위에 있음"""
    lower = [(x, y) for x, y in enumerate(value for value, _ in pairs)]
    higher = [(x, y + lift) for (x, y), (_, lift) in zip(lower, pairs)]
    lower_hull = lower_convex_hull(lower)
    higher_hull = lower_convex_hull(higher)
    for x in range(len(pairs)):
        assert boundary_height(higher_hull, x) >= boundary_height(lower_hull, x)


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(-30, 30)), min_size=1, max_size=25))
def test_segment_lengths_cover_span(points):
    polygon = NewtonPolygon(3, tuple(lower_convex_hull(points)))
    assert sum(segment.length for segment in polygon.segments) == polygon.top_degree - polygon.x_offset
