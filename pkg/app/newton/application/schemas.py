"""
뉴턴 다각형/인증서의 정규 JSON 형태.

정수는 안전 범위(2^53 − 1) 안이면 JSON 숫자, 밖이면 십진 문자열로,
기울기와 소수는 항상 기약분수 문자열로 직렬화합니다.
"""
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel

from app.newton.domain.certificate import DumasCertificate, IrreducibilityCertificate
from app.newton.domain.exact_number import decimal_string, format_rational, format_valuation, json_integer, parse_rational
from app.newton.domain.newton_polygon import LowerBoundRegion, NewtonPolygon, Segment, root_valuations
from app.newton.domain.polygon_laws import PurityReport

JsonInteger = Union[int, str]

SCHEMA_VERSION = 1


class SegmentSchema(BaseModel):
    slope: str
    length: JsonInteger

    @classmethod
    def of(cls, segment: Segment) -> "SegmentSchema":
        return cls(slope=format_rational(segment.slope), length=json_integer(segment.length))


def _integer(value: JsonInteger) -> int:
    return value if isinstance(value, int) else int(parse_rational(value))


def _vertex_list(vertices) -> List[List[JsonInteger]]:
    return [[json_integer(x), json_integer(y)] for x, y in vertices]


class PolygonSchema(BaseModel):
    """``{"prime": "2", "x_offset": 0, "vertices": [[0,1],[2,0]], "segments": [...]}``"""
    prime: str
    x_offset: JsonInteger
    vertices: List[List[JsonInteger]]
    segments: List[SegmentSchema]

    @classmethod
    def of(cls, polygon: NewtonPolygon) -> "PolygonSchema":
        return cls(
            prime=decimal_string(polygon.prime),
            x_offset=json_integer(polygon.x_offset),
            vertices=_vertex_list(polygon.vertices),
            segments=[SegmentSchema.of(segment) for segment in polygon.segments],
        )

    def to_polygon(self) -> NewtonPolygon:
        """JSON 형태에서 다각형을 복원합니다 (선분은 꼭짓점에서 다시 유도)."""
        return NewtonPolygon(
            prime=_integer(self.prime),
            vertices=tuple((_integer(x), _integer(y)) for x, y in self.vertices),
        )


class RegionSchema(BaseModel):
    vertices: List[List[JsonInteger]]
    segments: List[SegmentSchema]

    @classmethod
    def of(cls, region: LowerBoundRegion) -> "RegionSchema":
        return cls(
            vertices=_vertex_list(region.vertices),
            segments=[SegmentSchema.of(segment) for segment in region.segments],
        )


class RootValuationSchema(BaseModel):
    valuation: str
    multiplicity: JsonInteger


def root_valuation_schemas(polygon: NewtonPolygon) -> List[RootValuationSchema]:
    return [
        RootValuationSchema(valuation=format_valuation(value), multiplicity=json_integer(count))
        for value, count in root_valuations(polygon)
    ]


class PuritySchema(BaseModel):
    classification: str
    slope: Optional[str] = None
    r: Optional[int] = None
    height: Optional[int] = None
    description: str

    @classmethod
    def of(cls, report: PurityReport) -> "PuritySchema":
        return cls(
            classification=report.classification.value,
            slope=format_rational(report.slope) if report.slope is not None else None,
            r=report.r,
            height=report.height,
            description=report.describe(),
        )


class DumasCertificateSchema(BaseModel):
    prime: str
    height: int
    degree: int
    gcd_witness: int
    slope: str
    strict: bool
    polygon: PolygonSchema

    @classmethod
    def of(cls, certificate: DumasCertificate) -> "DumasCertificateSchema":
        return cls(
            prime=decimal_string(certificate.prime),
            height=certificate.height,
            degree=certificate.degree,
            gcd_witness=certificate.gcd_witness,
            slope=format_rational(certificate.slope),
            strict=certificate.strict,
            polygon=PolygonSchema.of(certificate.polygon),
        )


class PrimeEvidenceSchema(BaseModel):
    p: str
    slopes: List[str]
    forced_divisor: JsonInteger


class CertificateSchema(BaseModel):
    """``{"polynomial": ..., "degree": 20, "primes": [...], "combined_divisor": 20, "verdict": ...}``"""
    polynomial: str
    degree: JsonInteger
    primes: List[PrimeEvidenceSchema]
    combined_divisor: JsonInteger
    verdict: str

    @classmethod
    def of(cls, certificate: IrreducibilityCertificate) -> "CertificateSchema":
        return cls(
            polynomial=certificate.polynomial,
            degree=json_integer(certificate.degree),
            primes=[
                PrimeEvidenceSchema(
                    p=decimal_string(item.prime),
                    slopes=[format_rational(slope) for slope in item.slopes],
                    forced_divisor=json_integer(item.forced_divisor),
                )
                for item in certificate.evidence
            ],
            combined_divisor=json_integer(certificate.combined_divisor),
            verdict=certificate.verdict.value,
        )


def polygon_to_json(polygon: NewtonPolygon) -> Dict[str, Any]:
    return PolygonSchema.of(polygon).model_dump()


def region_to_json(region: LowerBoundRegion) -> Dict[str, Any]:
    return RegionSchema.of(region).model_dump()


def versioned(payload: BaseModel) -> Dict[str, Any]:
    """최상위에 ``"schema": 1`` 을 붙인 JSON 객체."""
    return {"schema": SCHEMA_VERSION, **payload.model_dump()}
