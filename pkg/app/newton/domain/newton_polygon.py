"""
p진 뉴턴 다각형: 점 집합의 하부 볼록 껍질과 선분/근 값매김.

모든 기하 비교는 정수 외적과 ``Fraction`` 으로 정확하게 수행합니다.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.newton.domain.errors import EmptyInput, ZeroPolynomial
from app.newton.domain.exact_number import INFINITY, Valuation, ensure_prime, rational_valuation
from app.newton.domain.polynomial import Polynomial

Vertex = Tuple[int, int]


@dataclass(frozen=True)
class Segment:
    """하부 경계의 한 변. 기울기(기약분수)와 x축 사영 길이."""
    slope: Fraction
    length: int
    start: Vertex
    end: Vertex


def _cross(origin: Vertex, a: Vertex, b: Vertex) -> int:
    # OA × OB 의 z성분: 양수면 반시계 방향
    return (a[0] - origin[0]) * (b[1] - origin[1]) - (a[1] - origin[1]) * (b[0] - origin[0])


def collapse_duplicates(points: Iterable[Vertex]) -> List[Vertex]:
    """같은 x를 갖는 점들을 y 최솟값 하나로 모읍니다 (x 오름차순)."""
    lowest: Dict[int, int] = {}
    for x, y in points:
        if x not in lowest or y < lowest[x]:
            lowest[x] = y
    return sorted(lowest.items())


def lower_convex_hull(points: Iterable[Vertex]) -> List[Vertex]:
    """
    앤드루 단조 사슬로 하부 볼록 껍질의 꼭짓점 사슬을 구합니다.

    내부의 공선점은 제거되고 양 끝점은 유지되므로 결과 기울기는 순증가합니다.

    Raises:
        EmptyInput: 점이 없을 때
    """
    ordered = collapse_duplicates(points)
    if not ordered:
        raise EmptyInput("lower convex hull of an empty point set")

    hull: List[Vertex] = []
    for point in ordered:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return hull


def chain_segments(vertices: Sequence[Vertex]) -> List[Segment]:
    return [
        Segment(
            slope=Fraction(end[1] - start[1], end[0] - start[0]),
            length=end[0] - start[0],
            start=start,
            end=end,
        )
        for start, end in zip(vertices, vertices[1:])
    ]


def boundary_height(vertices: Sequence[Vertex], x: int) -> Fraction:
    """꼭짓점 사슬이 나타내는 구간별 선형 경계의 x에서의 높이 (정확값)."""
    if not vertices or x < vertices[0][0] or x > vertices[-1][0]:
        raise ValueError(f"x={x} is outside the chain span")
    for start, end in zip(vertices, vertices[1:]):
        if start[0] <= x <= end[0]:
            return Fraction(start[1]) + Fraction(end[1] - start[1], end[0] - start[0]) * (x - start[0])
    return Fraction(vertices[0][1])


@dataclass(frozen=True)
class NewtonPolygon:
    """
    소수 p에 대한 뉴턴 다각형의 하부 경계.

    x_offset(최저 비영 계수 지수)와 top_degree는 꼭짓점 사슬의 양 끝에서 유도됩니다.
    단항식은 선분이 없는 꼭짓점 하나이며, 수직 반직선은 x_offset으로 암시됩니다.
    """
    prime: int
    vertices: Tuple[Vertex, ...]

    @property
    def x_offset(self) -> int:
        return self.vertices[0][0]

    @property
    def top_degree(self) -> int:
        return self.vertices[-1][0]

    @property
    def segments(self) -> List[Segment]:
        return chain_segments(self.vertices)

    @property
    def slopes(self) -> List[Fraction]:
        return [segment.slope for segment in self.segments]

    def __str__(self) -> str:
        return f"NP_{self.prime} with vertices {list(self.vertices)}"


@dataclass(frozen=True)
class LowerBoundRegion:
    """여러 다각형 꼭짓점 합집합의 하부 볼록 껍질 LCH(X). 소수 정보는 갖지 않습니다."""
    vertices: Tuple[Vertex, ...]

    @property
    def x_start(self) -> int:
        return self.vertices[0][0]

    @property
    def x_end(self) -> int:
        return self.vertices[-1][0]

    @property
    def segments(self) -> List[Segment]:
        return chain_segments(self.vertices)

    @classmethod
    def of(cls, polygon: NewtonPolygon) -> "LowerBoundRegion":
        return cls(polygon.vertices)


def valuation_points(f: Polynomial, p: int) -> List[Vertex]:
    """영이 아닌 계수의 점 (i, ord_p a_i). 영 계수는 값매김이 +∞라 점이 없습니다."""
    return [(index, rational_valuation(value, p)) for index, value in enumerate(f.coefficients) if value != 0]


def newton_polygon(f: Polynomial, p: int) -> NewtonPolygon:
    """
    NP_p(f) 를 계산합니다.

    Raises:
        NotPrime: p가 소수가 아닐 때
        ZeroPolynomial: f = 0 일 때
    """
    ensure_prime(p)
    if f.is_zero:
        raise ZeroPolynomial()
    return NewtonPolygon(prime=p, vertices=tuple(lower_convex_hull(valuation_points(f, p))))


def segments(polygon: NewtonPolygon) -> List[Segment]:
    return polygon.segments


def root_valuations(polygon: NewtonPolygon) -> List[Tuple[Valuation, int]]:
    """
    선분마다 (−기울기, 길이) 를 돌려줍니다. x_offset = k > 0 이면 근 0에 대한 (+∞, k)를 앞에 둡니다.
    """
    entries: List[Tuple[Valuation, int]] = []
    if polygon.x_offset > 0:
        entries.append((INFINITY, polygon.x_offset))
    entries.extend((-segment.slope, segment.length) for segment in polygon.segments)
    return entries


def chord_slope(polygon: NewtonPolygon) -> Optional[Fraction]:
    """첫 꼭짓점과 마지막 꼭짓점을 잇는 기울기 (단항식이면 None)."""
    if len(polygon.vertices) < 2:
        return None
    (x0, y0), (x1, y1) = polygon.vertices[0], polygon.vertices[-1]
    return Fraction(y1 - y0, x1 - x0)


def max_abs_slope(polygon: NewtonPolygon) -> Fraction:
    return max((abs(s) for s in polygon.slopes), default=Fraction(0))


def stretch_polygon(polygon: NewtonPolygon, d: int) -> NewtonPolygon:
    """가정 검사 없이 꼭짓점 (i, m) 을 (d·i, m) 으로 옮깁니다."""
    return NewtonPolygon(prime=polygon.prime, vertices=tuple((d * x, y) for x, y in polygon.vertices))


def polygon_from_segments(prime: int, start: Vertex, pieces: Iterable[Tuple[Fraction, int]]) -> NewtonPolygon:
    """시작 꼭짓점과 (기울기, 길이) 목록으로 다각형을 조립합니다. 같은 기울기는 합쳐집니다."""
    vertices = [start]
    previous_slope = None
    for slope, length in pieces:
        x, y = vertices[-1]
        rise = slope * length
        if rise.denominator != 1:
            raise ValueError(f"segment with slope {slope} and length {length} leaves the lattice")
        end = (x + length, y + int(rise))
        if previous_slope is not None and slope == previous_slope:
            vertices[-1] = end
        else:
            vertices.append(end)
        previous_slope = slope
    return NewtonPolygon(prime=prime, vertices=tuple(vertices))
