"""
기약성 인증서: Eisenstein–Dumas 판정과 기울기 분모에 의한 인수 차수 제약.

각 Q_p-기약 인수의 근은 한 가지 값매김만 가지므로 그 차수는 해당 기울기의 분모로
나누어떨어집니다. Q 위의 인수는 여러 선분을 섞을 수 있으므로 강제되는 약수는
분모들의 gcd 입니다.
"""
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Tuple

from sympy import primefactors

from app.newton.domain.errors import EmptyInput, ZeroConstantTerm
from app.newton.domain.exact_number import ensure_prime
from app.newton.domain.newton_polygon import NewtonPolygon, max_abs_slope, newton_polygon
from app.newton.domain.polygon_laws import classify_polygon, require_nonconstant_unit_origin
from app.newton.domain.polynomial import Polynomial, primitive_integer_scaling
from app.newton.domain.polynomial_parser import format_polynomial


@dataclass(frozen=True)
class DumasCertificate:
    """단일 선분, 높이 h, gcd(h, n) = 1 → Q 위에서 기약."""
    prime: int
    height: int
    degree: int
    gcd_witness: int
    polygon: NewtonPolygon
    strict: bool  # ord_p a_n = 0 정규화(p^r-Dumas) 여부

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.height, self.degree)


@dataclass(frozen=True)
class FactorDivisorEvidence:
    prime: int
    slopes: Tuple[Fraction, ...]
    forced_divisor: int
    polygon: NewtonPolygon


class Verdict(str, enum.Enum):
    CERTIFIED_IRREDUCIBLE = "certified_irreducible"
    FACTOR_DEGREES_MULTIPLE_OF = "factor_degrees_multiple_of"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IrreducibilityCertificate:
    polynomial: str
    degree: int
    evidence: Tuple[FactorDivisorEvidence, ...]
    combined_divisor: int
    verdict: Verdict = field(init=False)

    def __post_init__(self):
        if self.combined_divisor == self.degree:
            verdict = Verdict.CERTIFIED_IRREDUCIBLE
        elif self.combined_divisor > 1:
            verdict = Verdict.FACTOR_DEGREES_MULTIPLE_OF
        else:
            verdict = Verdict.INCONCLUSIVE
        object.__setattr__(self, "verdict", verdict)

    @property
    def is_certified(self) -> bool:
        return self.verdict == Verdict.CERTIFIED_IRREDUCIBLE


def dumas_certificate(f: Polynomial, p: int) -> Optional[DumasCertificate]:
    """
    Eisenstein–Dumas 인증서를 발급합니다. 없으면 None (기약성에 대해 아무것도 말하지 않음).

    유리 계수는 원시 정수 다항식으로 상수배한 뒤 판정합니다 (다각형의 수직 이동).

    Raises:
        ConstantPolynomial, ZeroConstantTerm, NotPrime
    """
    require_nonconstant_unit_origin(f)
    ensure_prime(p)
    _, primitive = primitive_integer_scaling(f)
    report = classify_polygon(newton_polygon(primitive, p))
    if not report.is_dumas:
        return None
    return DumasCertificate(
        prime=p,
        height=report.height,
        degree=primitive.degree,
        gcd_witness=gcd(report.height, primitive.degree),
        polygon=report.polygon,
        strict=report.is_pr_pure,
    )


def replay_dumas_certificate(certificate: DumasCertificate, f: Polynomial) -> bool:
    """새로 계산한 다각형에 대해 인증서(단일 선분, 높이, gcd 조건)를 재검증합니다."""
    _, primitive = primitive_integer_scaling(f)
    polygon = newton_polygon(primitive, certificate.prime)
    if polygon != certificate.polygon or len(polygon.segments) != 1:
        return False
    height = polygon.vertices[0][1] - polygon.vertices[-1][1]
    return (
        polygon.x_offset == 0
        and height == certificate.height
        and polygon.top_degree == certificate.degree
        and height >= 1
        and gcd(height, certificate.degree) == 1 == certificate.gcd_witness
    )


def forced_factor_divisor(f: Polynomial, p: int) -> FactorDivisorEvidence:
    """
    D_p = 기약분수 기울기 분모들의 gcd. Q 위 모든 기약 인수의 차수를 나눕니다.

    Raises:
        ConstantPolynomial, ZeroConstantTerm, NotPrime
    """
    require_nonconstant_unit_origin(f)
    polygon = newton_polygon(f, p)
    slopes = tuple(polygon.slopes)
    divisor = gcd(*(slope.denominator for slope in slopes))
    return FactorDivisorEvidence(prime=p, slopes=slopes, forced_divisor=divisor, polygon=polygon)


def certify_irreducible(
    f: Polynomial,
    primes: Iterable[int],
    descriptor: Optional[str] = None,
) -> IrreducibilityCertificate:
    """
    여러 소수의 D_p 를 lcm 으로 결합해 판정합니다.

    Returns:
        IrreducibilityCertificate: D = deg f 이면 CertifiedIrreducible,
            1 < D < deg f 이면 FactorDegreesMultipleOf(D), D = 1 이면 Inconclusive

    Raises:
        EmptyInput: 소수 목록이 비었을 때
    """
    require_nonconstant_unit_origin(f)
    ordered = sorted(set(primes))
    if not ordered:
        raise EmptyInput("at least one prime is required")
    evidence = tuple(forced_factor_divisor(f, p) for p in ordered)
    combined = lcm(*(item.forced_divisor for item in evidence))
    return IrreducibilityCertificate(
        polynomial=descriptor if descriptor is not None else format_polynomial(f),
        degree=f.degree,
        evidence=evidence,
        combined_divisor=combined,
    )


def radical(n: int) -> int:
    """n을 나누는 소수들의 곱 α_n."""
    result = 1
    for prime in primefactors(n):
        result *= prime
    return result


def dumas_partner(n: int, r: int, d: int) -> Polynomial:
    """g = x^d + α_n^r. r, d가 서로 다른 소수이면 n의 모든 소인수에서 p^r-Dumas 입니다."""
    if n < 1 or r < 1 or d < 1:
        raise ValueError("n, r and d must be positive")
    return Polynomial.monomial(1, d) + radical(n) ** r


def shape_preserving_partner(f: Polynomial, p: int, epsilon: Fraction) -> Tuple[Polynomial, int, int]:
    """
    f∘g 의 다각형이 f와 같은 선분 수를 갖고 모든 근의 값매김이 epsilon 미만이 되도록
    g = x^d + p^r (gcd(r, d) = 1, |s_i| < r, |s_i|/d < epsilon) 을 고릅니다.

    Returns:
        (g, r, d)
    """
    if f.constant_term == 0:
        raise ZeroConstantTerm()
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    polygon = newton_polygon(f, p)
    steepest = max_abs_slope(polygon)
    r = int(steepest) + 1
    d = 2
    while gcd(r, d) != 1 or steepest / d >= epsilon:
        d += 1
    return Polynomial.monomial(1, d) + p ** r, r, d
