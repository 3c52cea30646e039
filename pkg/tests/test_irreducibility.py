from fractions import Fraction

import pytest
from sympy import primefactors

from app.newton.application.irreducibility_service import IrreducibilityService
from app.newton.domain.certificate import (
    Verdict,
    certify_irreducible,
    dumas_certificate,
    dumas_partner,
    forced_factor_divisor,
    radical,
    replay_dumas_certificate,
    shape_preserving_partner,
)
from app.newton.domain.errors import DegreeCapExceeded, EmptyInput, NotDumas, NotPrime
from app.newton.domain.exp_taylor import base_p_digits, composed_exp_slopes, exp_slopes, taylor_exp
from app.newton.domain.newton_polygon import newton_polygon
from app.newton.domain.polynomial import compose, iterate, scale
from app.newton.domain.polynomial_parser import parse_polynomial


@pytest.fixture
def service():
    return IrreducibilityService(degree_cap=100_000)


def test_eisenstein_certificate():
    certificate = dumas_certificate(parse_polynomial("x^2 - 2"), 2)
    assert certificate is not None
    assert certificate.height == 1
    assert certificate.degree == 2
    assert certificate.gcd_witness == 1
    assert certificate.slope == Fraction(-1, 2)
    assert certificate.strict


def test_no_certificate_when_height_shares_factor_with_degree():
    assert dumas_certificate(parse_polynomial("x^4 + 4"), 2) is None


def test_certificate_for_second_iterate():
    f = parse_polynomial("x^4 + 4*x^2 + 6")
    certificate = dumas_certificate(f, 2)
    assert certificate.slope == Fraction(-1, 4)
    assert certificate.height == 1
    assert f == iterate(parse_polynomial("x^2 + 2"), 2)


def test_rational_input_is_cleared_before_reading_certificate():
    """유리 계수는 원시 정수 다항식으로 바꾼 뒤 판정"""
    certificate = dumas_certificate(parse_polynomial("1/3*x^3 + 2/3"), 2)
    assert certificate is not None
    assert certificate.height == 1
    assert certificate.degree == 3


def test_certificates_replay():
    for text, p in [("x^2 - 2", 2), ("x^3 + 25", 5), ("x^4 + 4*x^2 + 6", 2), ("2*x^5 + 24", 3)]:
        f = parse_polynomial(text)
        certificate = dumas_certificate(f, p)
        assert certificate is not None, text
        assert replay_dumas_certificate(certificate, f)


def test_replay_rejects_wrong_polynomial():
    certificate = dumas_certificate(parse_polynomial("x^2 - 2"), 2)
    assert not replay_dumas_certificate(certificate, parse_polynomial("x^2 - 4"))


def test_forced_divisor_examples():
    evidence = forced_factor_divisor(taylor_exp(4), 2)
    assert evidence.slopes == (Fraction(-3, 4),)
    assert evidence.forced_divisor == 4
    assert forced_factor_divisor(parse_polynomial("x^2 - 2"), 2).forced_divisor == 2
    evidence = forced_factor_divisor(parse_polynomial("5 + x^2 + 125*x^6"), 5)
    assert evidence.slopes == (Fraction(-1, 2), Fraction(3, 4))
    assert evidence.forced_divisor == 2


def test_forced_divisor_invariant_under_scaling():
    f = parse_polynomial("5 + x^2 + 125*x^6")
    for factor in (Fraction(7), Fraction(-1, 25), Fraction(125, 3)):
        assert forced_factor_divisor(scale(f, factor), 5).forced_divisor == forced_factor_divisor(f, 5).forced_divisor


def test_certify_examples():
    assert certify_irreducible(taylor_exp(4), [2]).verdict == Verdict.CERTIFIED_IRREDUCIBLE
    assert certify_irreducible(parse_polynomial("x^2 - 2"), [2]).is_certified


def test_certify_uses_gcd_of_denominators():
    """(x^2 − 2)(x^2 − 3) 는 p=2 에서 기울기 −1/2, 0 이라 D_2 = 1"""
    certificate = certify_irreducible(parse_polynomial("(x^2 - 2)*(x^2 - 3)"), [2])
    assert newton_polygon(parse_polynomial("(x^2 - 2)*(x^2 - 3)"), 2).vertices == ((0, 1), (2, 0), (4, 0))
    assert certificate.combined_divisor == 1
    assert certificate.verdict == Verdict.INCONCLUSIVE


def test_certify_partial_divisor():
    certificate = certify_irreducible(parse_polynomial("5 + x^2 + 125*x^6"), [5])
    assert certificate.combined_divisor == 2
    assert certificate.verdict == Verdict.FACTOR_DEGREES_MULTIPLE_OF


def test_certify_combines_primes_with_lcm():
    certificate = certify_irreducible(taylor_exp(6), [3, 2, 2])
    assert [item.prime for item in certificate.evidence] == [2, 3]
    assert certificate.combined_divisor == 6
    assert certificate.is_certified


def test_certify_errors():
    with pytest.raises(EmptyInput):
        certify_irreducible(parse_polynomial("x^2 - 2"), [])
    with pytest.raises(NotPrime):
        certify_irreducible(parse_polynomial("x^2 - 2"), [6])


@pytest.mark.parametrize("n", range(2, 61))
def test_exp_taylor_is_certified_by_prime_divisors(n):
    assert certify_irreducible(taylor_exp(n), primefactors(n)).is_certified


def test_taylor_exp():
    assert taylor_exp(1) == parse_polynomial("1 + x")
    assert taylor_exp(4) == parse_polynomial("1 + x + 1/2*x^2 + 1/6*x^3 + 1/24*x^4")
    with pytest.raises(ValueError):
        taylor_exp(0)


def test_base_p_digits():
    assert base_p_digits(10, 2) == [(1, 1), (3, 1)]
    assert base_p_digits(6, 3) == [(1, 2)]
    assert base_p_digits(1, 7) == [(0, 1)]


def test_exp_slopes_examples():
    assert exp_slopes(4, 2) == [(Fraction(-3, 4), 4)]
    assert exp_slopes(10, 2) == [(Fraction(-7, 8), 8), (Fraction(-1, 2), 2)]
    assert exp_slopes(1, 5) == [(Fraction(0), 1)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_exp_slopes_match_direct_polygon(p):
    for n in range(1, 201):
        polygon = newton_polygon(taylor_exp(n), p)
        assert exp_slopes(n, p) == [(segment.slope, segment.length) for segment in polygon.segments], n


def test_composed_exp_slopes_scale_by_degree_power():
    assert composed_exp_slopes(4, 2, 5, 1) == [(Fraction(-3, 20), 20)]
    assert composed_exp_slopes(4, 2, 5, 0) == exp_slopes(4, 2)


def test_check_reports_replayed_certificate(service):
    report = service.check(parse_polynomial("x^3 + 25"), 5)
    assert report.purity.classification == "dumas"
    assert report.certificate.height == 2
    assert report.replayed is True
    report = service.check(parse_polynomial("x^4 + 4"), 2)
    assert report.certificate is None
    assert report.replayed is None


@pytest.mark.parametrize("max_iter", range(1, 7))
def test_dynamical_iterates_of_eisenstein_quadratic(service, max_iter):
    report = service.certify_dynamical(parse_polynomial("x^2 + 2"), 2, max_iter)
    assert report.verified_up_to == max_iter
    assert [step.expected_slope for step in report.steps] == [f"-1/{2 ** m}" for m in range(1, max_iter + 1)]
    assert all(step.slope == step.expected_slope for step in report.steps)


def test_dynamical_iterates_agree_with_direct_certificates(service):
    g = parse_polynomial("x^3 + 25")
    report = service.certify_dynamical(g, 5, 3)
    assert report.r == 2
    assert [step.slope for step in report.steps] == ["-2/3", "-2/9", "-2/27"]
    for step in report.steps:
        assert step.certified == (dumas_certificate(iterate(g, step.m), 5) is not None)


def test_dynamical_requires_strict_dumas(service):
    with pytest.raises(NotDumas):
        service.certify_dynamical(parse_polynomial("x^4 + 4"), 2, 1)
    with pytest.raises(NotDumas):
        service.certify_dynamical(parse_polynomial("2*x^3 + 8"), 2, 1)


def test_dynamical_respects_cap():
    with pytest.raises(DegreeCapExceeded):
        IrreducibilityService(degree_cap=100).certify_dynamical(parse_polynomial("x^2 + 2"), 2, 7)


def test_exp_taylor_report(service):
    report = service.exp_taylor(10, 2)
    assert report.matches
    assert [(piece.slope, piece.length) for piece in report.predicted] == [("-7/8", 8), ("-1/2", 2)]


@pytest.mark.parametrize("m, divisor", [(0, 4), (1, 20), (2, 100)])
def test_exp_composition_with_quintic(service, m, divisor):
    report = service.certify_exp_composition(4, parse_polynomial("x^5 + 8"), m)
    assert report.hypotheses.hold
    assert report.certificate.combined_divisor == divisor
    assert report.certificate.verdict == "certified_irreducible"
    assert all(check.matches for check in report.slope_checks)
    assert not report.divisor_degraded


def test_exp_composition_checks_steepness_per_prime(service):
    report = service.certify_exp_composition(6, parse_polynomial("x^5 + 27000"), 1)
    assert [(item.p, item.r, item.slopes_within_r) for item in report.hypotheses.dumas] == [
        ("2", 3, True),
        ("3", 3, True),
    ]


def test_exp_composition_without_pr_purity_fails_steepness(service):
    """g(0) 이 p진 단위면 r 이 없어 기울기 조건을 만족할 수 없음"""
    report = service.certify_exp_composition(4, parse_polynomial("x^5 + 3"), 1)
    item = report.hypotheses.dumas[0]
    assert item.r is None
    assert not item.slopes_within_r
    assert not report.hypotheses.hold
    assert not report.divisor_degraded


def test_exp_composition_with_zero_constant_term(service):
    """g(0) = 0 이어도 f_n ∘ g 의 상수항은 1 이므로 인증서는 계산됨"""
    report = service.certify_exp_composition(4, parse_polynomial("x^5 + 2*x"), 1)
    assert not report.hypotheses.hold
    item = report.hypotheses.dumas[0]
    assert (item.strict_dumas, item.r, item.slopes_within_r) == (False, None, False)
    assert report.certificate.degree == 20
    assert [evidence.p for evidence in report.certificate.primes] == ["2"]


def test_exp_composition_of_degree_thirty(service):
    report = service.certify_exp_composition(6, parse_polynomial("x^5 + 27000"), 1)
    assert report.hypotheses.hold
    divisors = {evidence.p: evidence.forced_divisor for evidence in report.certificate.primes}
    assert divisors == {"2": 10, "3": 15}
    assert report.certificate.combined_divisor == 30
    assert report.certificate.verdict == "certified_irreducible"


def test_exp_composition_flags_degraded_divisor(service):
    """가정은 성립하지만 d 가 기울기 분자를 나누면 강제 약수가 줄어듦"""
    report = service.certify_exp_composition(4, parse_polynomial("x^3 + 4"), 1)
    assert report.hypotheses.hold
    check = report.slope_checks[0]
    assert [piece.slope for piece in check.actual] == ["-1/4"]
    assert check.expected_divisor == 12
    assert check.forced_divisor == 4
    assert report.divisor_degraded
    assert report.certificate.verdict == "factor_degrees_multiple_of"


def test_exp_composition_errors(service):
    with pytest.raises(EmptyInput):
        service.certify_exp_composition(1, parse_polynomial("x^5 + 8"), 1)
    with pytest.raises(ValueError):
        service.certify_exp_composition(4, parse_polynomial("x + 8"), 1)
    with pytest.raises(DegreeCapExceeded):
        IrreducibilityService(degree_cap=50).certify_exp_composition(4, parse_polynomial("x^5 + 8"), 2)


def test_certify_composition_matches_direct_computation(service):
    f = parse_polynomial("x^2 - 2")
    g = parse_polynomial("x^3 + 2")
    certificate = service.certify_composition(f, g, 1, [2])
    assert certificate.degree == 6
    assert certificate.combined_divisor == forced_factor_divisor(compose(f, g), 2).forced_divisor


def test_dumas_partner():
    assert radical(12) == 6
    assert dumas_partner(6, 3, 5) == parse_polynomial("x^5 + 216")
    with pytest.raises(ValueError):
        dumas_partner(0, 3, 5)


def test_shape_preserving_partner():
    g, r, d = shape_preserving_partner(parse_polynomial("5 + x^2 + 125*x^6"), 5, Fraction(1, 4))
    assert (r, d) == (1, 4)
    assert g == parse_polynomial("x^4 + 5")
