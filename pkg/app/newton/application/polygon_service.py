import logging
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, TypeAdapter, ValidationError

from app.newton.application.schemas import (
    PolygonSchema,
    PuritySchema,
    RootValuationSchema,
    root_valuation_schemas,
)
from app.newton.domain.certificate import shape_preserving_partner
from app.newton.domain.errors import (
    ConstantPolynomial,
    DegreeCapExceeded,
    HypothesisViolation,
    NewtonPolygonError,
    NotPrPure,
    ParseError,
    ZeroConstantTerm,
)
from app.newton.domain.exact_number import ensure_prime, format_rational, parse_rational
from app.newton.domain.newton_polygon import (
    LowerBoundRegion,
    NewtonPolygon,
    newton_polygon,
    stretch_polygon,
)
from app.newton.domain.polygon_laws import (
    check_stretch_hypotheses,
    classify_purity,
    predict_composition,
    union_lower_bound,
)
from app.newton.domain.polynomial import Polynomial, compose, from_coefficient_strings, iterate
from app.newton.domain.polynomial_parser import format_polynomial, parse_polynomial

logger = logging.getLogger(__name__)

_COEFFICIENT_ARRAY = TypeAdapter(List[str])


class PolygonReport(BaseModel):
    """np 명령 응답"""
    polynomial: str
    polygon: PolygonSchema
    purity: Optional[PuritySchema] = None
    purity_note: Optional[str] = None
    root_valuations: List[RootValuationSchema]


class PartnerSchema(BaseModel):
    """자동 선택된 모양 보존 합성 상대 g = x^d + p^r"""
    g: str
    r: int
    d: int
    epsilon: str
    max_root_valuation: str
    within_epsilon: bool


class CompositionReport(BaseModel):
    """
    f∘g^∘m 의 실제 다각형과 (가정이 성립할 때) 신장 예측의 비교 결과.
    가정이 깨지면 predicted는 비고 naive_stretch(단순 신장)만 함께 보고합니다.
    """
    f: str
    g: str
    prime: str
    iterations: int
    composition: str
    hypotheses_hold: bool
    message: str
    r: Optional[int] = None
    predicted: Optional[PolygonSchema] = None
    naive_stretch: PolygonSchema
    actual: PolygonSchema
    matches: Optional[bool] = None
    partner: Optional[PartnerSchema] = None


class PolygonService:
    """
    뉴턴 다각형 서비스: 파싱, 다각형 계산, 합성 예측 검증
    """

    def __init__(self, degree_cap: int):
        """
        서비스 초기화

        Args:
            degree_cap: 합성/거듭제곱 결과에 허용하는 최대 차수
        """
        self.degree_cap = degree_cap

    def parse(self, text: str, prime: Optional[int] = None) -> Polynomial:
        """
        다항식 텍스트를 파싱합니다. prime이 주어지면 기호 ``p`` 를 그 값으로 치환합니다.
        ``[`` 로 시작하면 계수 배열 ``["c0", "c1", ...]`` 로 읽습니다 (기호 치환 없음).

        Raises:
            ParseError: 문법 오류
            DegreeCapExceeded: 차수 상한 초과
        """
        stripped = text.lstrip()
        if stripped.startswith("["):
            return self._parse_coefficient_array(stripped, len(text) - len(stripped))
        substitutions = {"p": Fraction(prime)} if prime is not None else {}
        return parse_polynomial(text, substitutions=substitutions, cap=self.degree_cap)

    def _parse_coefficient_array(self, text: str, offset: int) -> Polynomial:
        try:
            values = _COEFFICIENT_ARRAY.validate_json(text)
        except ValidationError as e:
            raise ParseError(offset, f"invalid coefficient array: {e.errors()[0]['msg']}")
        try:
            f = from_coefficient_strings(values)
        except ParseError as e:
            raise ParseError(offset, f"invalid coefficient array: {e.message}")
        if not f.is_zero and f.degree > self.degree_cap:
            raise DegreeCapExceeded(f.degree, self.degree_cap)
        return f

    def polygon(self, f: Polynomial, p: int) -> NewtonPolygon:
        try:
            polygon = newton_polygon(f, p)
            logger.debug(f"다각형 계산 완료: {polygon}")
            return polygon
        except NewtonPolygonError as e:
            logger.error(f"다각형 계산 실패: {str(e)}")
            raise e

    def describe(self, f: Polynomial, p: int) -> PolygonReport:
        """
        다각형, 순수성 분류, 근 값매김을 한 번에 보고합니다.
        순수성은 상수가 아니고 f(0) ≠ 0 일 때만 정의되며, 아니면 purity_note로 이유를 남깁니다.
        """
        polygon = self.polygon(f, p)
        purity, note = None, None
        try:
            purity = PuritySchema.of(classify_purity(f, p))
        except (ConstantPolynomial, ZeroConstantTerm) as e:
            note = str(e)
        logger.info(f"다각형 보고 완료: p={p}, 선분 {len(polygon.segments)}개")
        return PolygonReport(
            polynomial=format_polynomial(f),
            polygon=PolygonSchema.of(polygon),
            purity=purity,
            purity_note=note,
            root_valuations=root_valuation_schemas(polygon),
        )

    def union_region(self, polynomials: List[Polynomial], p: int) -> LowerBoundRegion:
        return union_lower_bound([self.polygon(f, p) for f in polynomials])

    def verify_composition(
        self,
        f: Polynomial,
        g: Polynomial,
        p: int,
        iterations: int = 1,
    ) -> CompositionReport:
        """
        f∘g^∘m 을 직접 계산해 신장 예측과 정확히 비교합니다.

        Args:
            f: 바깥 다항식 (상수가 아님)
            g: 안쪽 다항식 (상수가 아님)
            p: 소수
            iterations: g의 반복 횟수 m (0이면 f 자신)

        Returns:
            CompositionReport: 가정 성립 여부, 예측/실제 다각형, 일치 여부

        Raises:
            ConstantPolynomial: f 또는 g가 상수일 때
            DegreeCapExceeded: deg f · (deg g)^m 이 상한을 넘을 때
        """
        try:
            ensure_prime(p)
            if f.is_constant or g.is_constant:
                raise ConstantPolynomial("f and g must be nonconstant")
            if iterations < 0:
                raise ValueError("iteration count must be nonnegative")
            composed_degree = f.degree * g.degree ** iterations
            if composed_degree > self.degree_cap:
                raise DegreeCapExceeded(composed_degree, self.degree_cap)

            inner = iterate(g, iterations, self.degree_cap)
            composition = compose(f, inner, self.degree_cap)
            np_f = self.polygon(f, p)
            np_inner = self.polygon(inner, p)
            actual = self.polygon(composition, p)
            naive = stretch_polygon(np_f, inner.degree)

            predicted, r = None, None
            try:
                r = check_stretch_hypotheses(np_f, np_inner)
                predicted = predict_composition(np_f, np_inner)
                message = "prediction matches" if predicted == actual else "prediction differs"
            except (NotPrPure, HypothesisViolation, ZeroConstantTerm) as e:
                message = str(e)
                logger.info(f"신장 가정 불만족: {message}")

            logger.info(f"합성 검증 완료: p={p}, m={iterations}, deg={composition.degree}, {message}")
            return CompositionReport(
                f=format_polynomial(f),
                g=format_polynomial(g),
                prime=str(p),
                iterations=iterations,
                composition=format_polynomial(composition),
                hypotheses_hold=predicted is not None,
                message=message,
                r=r,
                predicted=PolygonSchema.of(predicted) if predicted is not None else None,
                naive_stretch=PolygonSchema.of(naive),
                actual=PolygonSchema.of(actual),
                matches=(predicted == actual) if predicted is not None else None,
            )
        except NewtonPolygonError as e:
            logger.error(f"합성 검증 중 오류 발생: {str(e)}")
            raise e

    def compose_with_partner(self, f: Polynomial, p: int, epsilon: Fraction) -> CompositionReport:
        """
        f의 선분 수를 보존하면서 모든 근의 값매김을 epsilon 미만으로 만드는
        g = x^d + p^r 을 골라 합성을 검증합니다.
        """
        g, r, d = shape_preserving_partner(f, p, epsilon)
        report = self.verify_composition(f, g, p, iterations=1)
        largest = max((abs(parse_rational(segment.slope)) for segment in report.actual.segments), default=Fraction(0))
        report.partner = PartnerSchema(
            g=format_polynomial(g),
            r=r,
            d=d,
            epsilon=format_rational(Fraction(epsilon)),
            max_root_valuation=format_rational(largest),
            within_epsilon=largest < epsilon,
        )
        logger.info(f"합성 상대 선택: r={r}, d={d}")
        return report
