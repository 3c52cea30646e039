import logging
from fractions import Fraction
from typing import Iterable, List, Optional

from pydantic import BaseModel
from sympy import isprime, primefactors

from app.newton.application.schemas import (
    CertificateSchema,
    DumasCertificateSchema,
    PolygonSchema,
    PuritySchema,
)
from app.newton.domain.certificate import (
    IrreducibilityCertificate,
    certify_irreducible,
    dumas_certificate,
    replay_dumas_certificate,
)
from app.newton.domain.errors import (
    ConstantPolynomial,
    DegreeCapExceeded,
    EmptyInput,
    NewtonPolygonError,
    NotDumas,
    ZeroConstantTerm,
)
from app.newton.domain.exact_number import format_rational, int_valuation
from app.newton.domain.exp_taylor import composed_exp_slopes, exp_slopes, taylor_exp
from app.newton.domain.newton_polygon import newton_polygon
from app.newton.domain.polygon_laws import classify_purity
from app.newton.domain.polynomial import Polynomial, compose, iterate
from app.newton.domain.polynomial_parser import format_polynomial

logger = logging.getLogger(__name__)


class SlopePiece(BaseModel):
    slope: str
    length: int


def _pieces(pairs) -> List[SlopePiece]:
    return [SlopePiece(slope=format_rational(slope), length=length) for slope, length in pairs]


class CheckReport(BaseModel):
    """check 명령 응답: 순수성 분류와 (있다면) 재검증된 Dumas 인증서"""
    polynomial: str
    prime: str
    purity: PuritySchema
    certificate: Optional[DumasCertificateSchema] = None
    replayed: Optional[bool] = None


class DynamicalStep(BaseModel):
    m: int
    degree: int
    slope: str
    expected_slope: str
    certified: bool


class DynamicalReport(BaseModel):
    """
    반복 합성 g^∘m 의 Dumas 인증 결과.
    이론적 보장은 모든 m 에 대해 성립하고, steps 는 실제로 계산해 확인한 범위입니다.
    """
    g: str
    prime: str
    r: int
    degree: int
    steps: List[DynamicalStep]
    verified_up_to: int
    guarantee: str


class ExpTaylorReport(BaseModel):
    n: int
    prime: str
    polynomial: str
    predicted: List[SlopePiece]
    computed: List[SlopePiece]
    matches: bool
    polygon: PolygonSchema


class DumasAtPrime(BaseModel):
    p: str
    strict_dumas: bool
    r: Optional[int] = None
    slopes_within_r: bool


class ExpHypotheses(BaseModel):
    degree: int
    degree_is_prime: bool
    degree_exceeds_prime_divisors: bool
    dumas: List[DumasAtPrime]
    hold: bool


class SlopeCheck(BaseModel):
    p: str
    predicted: List[SlopePiece]
    actual: List[SlopePiece]
    matches: bool
    expected_divisor: int
    forced_divisor: int


class ExpCompositionReport(BaseModel):
    """
    f_n ∘ g^∘m 의 인증 결과. 가정 점검과 실제 분모 계산은 서로 독립적으로 보고됩니다.
    divisor_degraded 는 가정이 성립하는데도 D_p 가 d^m·p^{ord_p n} 의 배수가 아닌 경우입니다.
    """
    n: int
    g: str
    iterations: int
    hypotheses: ExpHypotheses
    certificate: CertificateSchema
    slope_checks: List[SlopeCheck]
    divisor_degraded: bool


class IrreducibilityService:
    """
    기약성 인증 서비스
    """

    def __init__(self, degree_cap: int):
        """
        서비스 초기화

        Args:
            degree_cap: 명시적으로 계산하는 합성 다항식의 최대 차수
        """
        self.degree_cap = degree_cap

    def check(self, f: Polynomial, p: int) -> CheckReport:
        """
        순수성 분류와 Eisenstein–Dumas 인증서를 계산하고, 인증서는 새 다각형으로 재검증합니다.

        Raises:
            ConstantPolynomial, ZeroConstantTerm, NotPrime
        """
        try:
            report = classify_purity(f, p)
            certificate = dumas_certificate(f, p)
            replayed = replay_dumas_certificate(certificate, f) if certificate is not None else None
            logger.info(f"순수성 판정 완료: p={p}, {report.classification.value}")
            return CheckReport(
                polynomial=format_polynomial(f),
                prime=str(p),
                purity=PuritySchema.of(report),
                certificate=DumasCertificateSchema.of(certificate) if certificate is not None else None,
                replayed=replayed,
            )
        except NewtonPolygonError as e:
            logger.error(f"순수성 판정 중 오류 발생: {str(e)}")
            raise e

    def certify(
        self,
        f: Polynomial,
        primes: Iterable[int],
        descriptor: Optional[str] = None,
    ) -> IrreducibilityCertificate:
        try:
            certificate = certify_irreducible(f, primes, descriptor)
            logger.info(
                f"기약성 판정 완료: deg={certificate.degree}, D={certificate.combined_divisor}, "
                f"{certificate.verdict.value}"
            )
            return certificate
        except NewtonPolygonError as e:
            logger.error(f"기약성 판정 중 오류 발생: {str(e)}")
            raise e

    def certify_composition(
        self,
        f: Polynomial,
        g: Polynomial,
        iterations: int,
        primes: Iterable[int],
    ) -> IrreducibilityCertificate:
        """f∘g^∘m 을 명시적으로 계산해 판정합니다."""
        self._check_composed_degree(f.degree, g.degree, iterations)
        composed = compose(f, iterate(g, iterations, self.degree_cap), self.degree_cap)
        descriptor = f"({format_polynomial(f)}) o ({format_polynomial(g)})^o{iterations}"
        return self.certify(composed, primes, descriptor)

    def certify_dynamical(self, g: Polynomial, p: int, max_iter: int) -> DynamicalReport:
        """
        g 가 엄격한 p^r-Dumas 이면 모든 반복 합성이 기약입니다.
        m = 1..max_iter 에 대해 g^∘m 을 직접 계산해 기울기 −r/d^m 의 Dumas 인증서를 확인합니다.

        Raises:
            NotDumas: g 가 p 에서 엄격한 p^r-Dumas 가 아닐 때
            DegreeCapExceeded: d^max_iter 가 상한을 넘을 때
        """
        try:
            if max_iter < 1:
                raise ValueError("max_iter must be positive")
            report = classify_purity(g, p)
            if not report.is_strict_dumas:
                raise NotDumas(f"g is not p^r-Dumas at p={p}: {report.describe()}")
            d = g.degree
            if d ** max_iter > self.degree_cap:
                raise DegreeCapExceeded(d ** max_iter, self.degree_cap)

            steps = []
            current = g
            for m in range(1, max_iter + 1):
                if m > 1:
                    current = compose(current, g, self.degree_cap)
                expected = Fraction(-report.r, d ** m)
                certificate = dumas_certificate(current, p)
                slopes = newton_polygon(current, p).slopes
                certified = certificate is not None and slopes == [expected]
                steps.append(
                    DynamicalStep(
                        m=m,
                        degree=current.degree,
                        slope=", ".join(format_rational(slope) for slope in slopes),
                        expected_slope=format_rational(expected),
                        certified=certified,
                    )
                )
                logger.debug(f"반복 {m}: deg={current.degree}, 인증={certified}")

            verified_up_to = 0
            for step in steps:
                if not step.certified:
                    break
                verified_up_to = step.m
            logger.info(f"동역학적 기약성 확인 완료: p={p}, m <= {verified_up_to}")
            return DynamicalReport(
                g=format_polynomial(g),
                prime=str(p),
                r=report.r,
                degree=d,
                steps=steps,
                verified_up_to=verified_up_to,
                guarantee=(
                    f"every iterate of g is irreducible over Q (p^{report.r}-Dumas at p={p}); "
                    f"explicitly verified for m <= {verified_up_to}"
                ),
            )
        except NewtonPolygonError as e:
            logger.error(f"동역학적 기약성 확인 중 오류 발생: {str(e)}")
            raise e

    def exp_taylor(self, n: int, p: int) -> ExpTaylorReport:
        """f_n 의 자릿수 기울기 공식과 직접 계산한 NP_p(f_n) 을 비교합니다."""
        f = taylor_exp(n)
        predicted = exp_slopes(n, p)
        polygon = newton_polygon(f, p)
        computed = [(segment.slope, segment.length) for segment in polygon.segments]
        logger.info(f"테일러 다항식 기울기 비교 완료: n={n}, p={p}")
        return ExpTaylorReport(
            n=n,
            prime=str(p),
            polynomial=format_polynomial(f),
            predicted=_pieces(predicted),
            computed=_pieces(computed),
            matches=predicted == computed,
            polygon=PolygonSchema.of(polygon),
        )

    def certify_exp_composition(
        self,
        n: int,
        g: Polynomial,
        m: int,
        primes: Optional[Iterable[int]] = None,
    ) -> ExpCompositionReport:
        """
        f_n ∘ g^∘m 을 명시적으로 만들어 n 의 소인수(또는 지정한 소수)로 판정합니다.

        Args:
            n: 테일러 차수 (n ≥ 1)
            g: 합성 대상 (deg g ≥ 2)
            m: 반복 횟수 (0 허용)
            primes: 사용할 소수 목록 (생략 시 n 의 소인수)

        Returns:
            ExpCompositionReport: 가정 점검, 인증서, 소수별 기울기 비교, 분모 퇴화 여부

        Raises:
            EmptyInput: 사용할 소수가 없을 때 (n = 1 이고 primes 생략)
            DegreeCapExceeded: n·d^m 이 상한을 넘을 때
        """
        try:
            if n < 1:
                raise ValueError("n must be at least 1")
            if g.is_zero or g.degree < 2:
                raise ValueError("deg g must be at least 2")
            if m < 0:
                raise ValueError("iteration count must be nonnegative")
            d = g.degree
            divisors_of_n = primefactors(n)
            chosen = sorted(set(primes)) if primes is not None else list(divisors_of_n)
            if not chosen:
                raise EmptyInput(f"no primes divide n={n}; pass primes explicitly")
            self._check_composed_degree(n, d, m)

            hypotheses = self._exp_hypotheses(n, g, divisors_of_n)
            composed = compose(taylor_exp(n), iterate(g, m, self.degree_cap), self.degree_cap)
            certificate = self.certify(composed, chosen, f"f_{n} o ({format_polynomial(g)})^o{m}")

            slope_checks = []
            for evidence in certificate.evidence:
                p = evidence.prime
                predicted = composed_exp_slopes(n, p, d, m)
                actual = [(segment.slope, segment.length) for segment in evidence.polygon.segments]
                expected_divisor = d ** m * p ** int_valuation(n, p)
                slope_checks.append(
                    SlopeCheck(
                        p=str(p),
                        predicted=_pieces(predicted),
                        actual=_pieces(actual),
                        matches=predicted == actual,
                        expected_divisor=expected_divisor,
                        forced_divisor=evidence.forced_divisor,
                    )
                )
            degraded = hypotheses.hold and any(
                check.forced_divisor % check.expected_divisor != 0
                for check in slope_checks
                if int(check.p) in divisors_of_n
            )
            if degraded:
                logger.warning(f"가정은 성립하나 강제 약수가 퇴화함: n={n}, d={d}, m={m}")
            logger.info(f"지수 합성 판정 완료: n={n}, m={m}, {certificate.verdict.value}")
            return ExpCompositionReport(
                n=n,
                g=format_polynomial(g),
                iterations=m,
                hypotheses=hypotheses,
                certificate=CertificateSchema.of(certificate),
                slope_checks=slope_checks,
                divisor_degraded=degraded,
            )
        except NewtonPolygonError as e:
            logger.error(f"지수 합성 판정 중 오류 발생: {str(e)}")
            raise e

    def _check_composed_degree(self, outer_degree: int, inner_degree: int, iterations: int) -> None:
        degree = outer_degree * inner_degree ** iterations
        if degree > self.degree_cap:
            raise DegreeCapExceeded(degree, self.degree_cap)

    @staticmethod
    def _exp_hypotheses(n: int, g: Polynomial, divisors_of_n: List[int]) -> ExpHypotheses:
        d = g.degree
        dumas = []
        for p in divisors_of_n:
            try:
                report = classify_purity(g, p)
            except (ZeroConstantTerm, ConstantPolynomial) as e:
                logger.debug(f"p={p} 에서 g 분류 불가: {str(e)}")
                dumas.append(DumasAtPrime(p=str(p), strict_dumas=False, r=None, slopes_within_r=False))
                continue
            steepest = max(abs(slope) for slope, _ in exp_slopes(n, p))
            within = report.r is not None and steepest < report.r
            dumas.append(
                DumasAtPrime(
                    p=str(p), strict_dumas=report.is_strict_dumas, r=report.r, slopes_within_r=within
                )
            )
        degree_is_prime = bool(isprime(d))
        exceeds = all(d > p for p in divisors_of_n)
        return ExpHypotheses(
            degree=d,
            degree_is_prime=degree_is_prime,
            degree_exceeds_prime_divisors=exceeds,
            dumas=dumas,
            hold=degree_is_prime
            and exceeds
            and all(item.strict_dumas and item.slopes_within_r for item in dumas),
        )
