"""
뉴턴 다각형의 변환 법칙: 곱(선분 연결), 합(합집합 하부 껍질 하계), 합성(신장),
그리고 순수성 분류.
"""
import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from math import gcd
from typing import List, Optional, Sequence, Tuple

from app.newton.domain.errors import (
    ConstantPolynomial,
    EmptyInput,
    HypothesisViolation,
    NotPrPure,
    PrimeMismatch,
    SpanMismatch,
    ZeroConstantTerm,
)
from app.newton.domain.newton_polygon import (
    LowerBoundRegion,
    NewtonPolygon,
    boundary_height,
    lower_convex_hull,
    newton_polygon,
    polygon_from_segments,
    stretch_polygon,
)
from app.newton.domain.polynomial import Polynomial


class PurityClass(str, enum.Enum):
    NOT_PURE = "not_pure"
    PURE = "pure"
    PR_PURE = "pr_pure"
    DUMAS = "dumas"


@dataclass(frozen=True)
class PurityReport:
    """
    순수성 분류 결과.

    slope는 순수할 때의 유일한 기울기, r은 p^r-순수일 때의 ord_p a_0,
    height는 (수직 이동에 불변인) Dumas 높이 ord_p a_0 − ord_p a_n 입니다.
    """
    classification: PurityClass
    polygon: NewtonPolygon
    slope: Optional[Fraction] = None
    r: Optional[int] = None
    height: Optional[int] = None

    @property
    def is_pure(self) -> bool:
        return self.classification != PurityClass.NOT_PURE

    @property
    def is_pr_pure(self) -> bool:
        return self.r is not None

    @property
    def is_dumas(self) -> bool:
        return self.height is not None

    @property
    def is_strict_dumas(self) -> bool:
        """원래 정규화(ord_p a_n = 0)를 만족하는 p^r-Dumas."""
        return self.is_dumas and self.is_pr_pure

    def describe(self) -> str:
        if self.classification == PurityClass.NOT_PURE:
            return f"not pure ({len(self.polygon.segments)} segments)"
        labels = [f"pure of slope {self.slope}"]
        if self.is_pr_pure:
            labels.append(f"p^{self.r}-pure")
        if self.is_dumas:
            labels.append(f"Dumas (height {self.height}, gcd({self.height},{self.polygon.top_degree})=1)")
        return ", ".join(labels)


def pr_pure_height(polygon: NewtonPolygon) -> Optional[int]:
    """
    polygon이 p^r-순수(한 선분, (0, r) → (d, 0), r ≥ 1)이면 r, 아니면 None.

    이 형태면 내부 점이 모두 양의 높이 선분 위에 있으므로 계수는 전부 p진 정수입니다.
    """
    if len(polygon.vertices) != 2 or polygon.x_offset != 0:
        return None
    r = polygon.vertices[0][1]
    if r < 1 or polygon.vertices[-1][1] != 0:
        return None
    return r


def classify_polygon(polygon: NewtonPolygon) -> PurityReport:
    """x_offset = 0 이고 선분이 하나 이상인 다각형을 분류합니다."""
    segments = polygon.segments
    if len(segments) != 1:
        return PurityReport(PurityClass.NOT_PURE, polygon)

    slope = segments[0].slope
    r = pr_pure_height(polygon)
    height = polygon.vertices[0][1] - polygon.vertices[-1][1]
    degree = polygon.top_degree
    dumas_height = height if height >= 1 and gcd(height, degree) == 1 else None

    if dumas_height is not None:
        classification = PurityClass.DUMAS
    elif r is not None:
        classification = PurityClass.PR_PURE
    else:
        classification = PurityClass.PURE
    return PurityReport(classification, polygon, slope=slope, r=r, height=dumas_height)


def require_nonconstant_unit_origin(f: Polynomial) -> None:
    """f가 상수가 아니고 f(0) ≠ 0 인지 검사합니다."""
    if f.is_constant:
        raise ConstantPolynomial()
    if f.constant_term == 0:
        raise ZeroConstantTerm()


def classify_purity(f: Polynomial, p: int) -> PurityReport:
    """
    f의 p에서의 순수성을 분류합니다.

    Raises:
        ConstantPolynomial: f가 상수일 때
        ZeroConstantTerm: f(0) = 0 일 때
        NotPrime: p가 소수가 아닐 때
    """
    require_nonconstant_unit_origin(f)
    return classify_polygon(newton_polygon(f, p))


def _require_same_prime(polygons: Sequence[NewtonPolygon]) -> int:
    prime = polygons[0].prime
    for polygon in polygons[1:]:
        if polygon.prime != prime:
            raise PrimeMismatch(prime, polygon.prime)
    return prime


def concatenated_segments(polygons: Sequence[NewtonPolygon]) -> List[Tuple[Fraction, int]]:
    """모든 선분을 기울기 순으로 나열합니다 (같은 기울기 병합 전)."""
    pieces = [(segment.slope, segment.length) for polygon in polygons for segment in polygon.segments]
    return sorted(pieces, key=lambda piece: piece[0])


def predict_product(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    """
    NP(f·g) 예측: 선분을 기울기 순으로 이어 붙이고 같은 기울기는 하나로 합칩니다.

    Raises:
        PrimeMismatch: 두 다각형의 소수가 다를 때
    """
    prime = _require_same_prime([a, b])
    start = (a.x_offset + b.x_offset, a.vertices[0][1] + b.vertices[0][1])
    merged = [
        (slope, sum(length for _, length in group))
        for slope, group in groupby(concatenated_segments([a, b]), key=lambda piece: piece[0])
    ]
    return polygon_from_segments(prime, start, merged)


def union_lower_bound(polygons: Sequence[NewtonPolygon]) -> LowerBoundRegion:
    """
    합 f_1 + ... + f_k 의 다각형을 아래에서 막는 LCH(꼭짓점 합집합).

    Raises:
        EmptyInput: 목록이 비었을 때
        PrimeMismatch: 소수가 섞였을 때
    """
    if not polygons:
        raise EmptyInput("union of an empty list of polygons")
    _require_same_prime(polygons)
    points = [vertex for polygon in polygons for vertex in polygon.vertices]
    return LowerBoundRegion(tuple(lower_convex_hull(points)))


def region_contains(polygon: NewtonPolygon, region: LowerBoundRegion) -> bool:
    """
    polygon의 모든 꼭짓점이 region 경계 위(또는 경계 상)에 있는지 정확히 비교합니다.

    Raises:
        SpanMismatch: polygon의 x 범위가 region 범위를 벗어날 때
    """
    if polygon.x_offset < region.x_start or polygon.top_degree > region.x_end:
        raise SpanMismatch(
            f"polygon span [{polygon.x_offset}, {polygon.top_degree}] "
            f"is outside region span [{region.x_start}, {region.x_end}]"
        )
    return all(y >= boundary_height(region.vertices, x) for x, y in polygon.vertices)


def check_stretch_hypotheses(np_f: NewtonPolygon, np_g: NewtonPolygon) -> int:
    """
    신장 정리 가정을 검사하고 g의 높이 r을 돌려줍니다.

    Raises:
        PrimeMismatch, ZeroConstantTerm, NotPrPure, HypothesisViolation
    """
    _require_same_prime([np_f, np_g])
    if np_f.x_offset != 0:
        raise ZeroConstantTerm("f(0) = 0: the polygon of f must start at x = 0")
    r = pr_pure_height(np_g)
    if r is None:
        raise NotPrPure(f"g is not p^r-pure at p={np_g.prime}: polygon vertices {list(np_g.vertices)}")
    if np_f.slopes:
        # 가장 가파른 기울기를 보고 (크기가 같으면 양수 쪽)
        steepest = max(np_f.slopes, key=lambda slope: (abs(slope), slope))
        if abs(steepest) >= r:
            raise HypothesisViolation(steepest, r)
    return r


def predict_composition(np_f: NewtonPolygon, np_g: NewtonPolygon) -> NewtonPolygon:
    """
    NP(f∘g) 예측: 꼭짓점 (i_j, m_j) 를 (d·i_j, m_j) 로 옮기고 기울기는 s_j/d 가 됩니다.
    """
    check_stretch_hypotheses(np_f, np_g)
    return stretch_polygon(np_f, np_g.top_degree)
