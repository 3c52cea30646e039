from fractions import Fraction
from typing import Optional


class NewtonPolygonError(Exception):
    """뉴턴 다각형 도메인 예외의 최상위 클래스"""


class ParseError(NewtonPolygonError):
    """다항식/유리수 텍스트 구문 오류 (위치 포함)"""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"parse error at position {position}: {message}")


class NotPrime(NewtonPolygonError):
    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is not a prime")


class ZeroPolynomial(NewtonPolygonError):
    def __init__(self, message: str = "the zero polynomial has no Newton polygon"):
        super().__init__(message)


class ConstantPolynomial(NewtonPolygonError):
    def __init__(self, message: str = "polynomial must be nonconstant"):
        super().__init__(message)


class ZeroConstantTerm(NewtonPolygonError):
    def __init__(self, message: str = "polynomial must satisfy f(0) != 0"):
        super().__init__(message)


class EmptyInput(NewtonPolygonError):
    pass


class PrimeMismatch(NewtonPolygonError):
    def __init__(self, first: int, second: int):
        self.first = first
        self.second = second
        super().__init__(f"polygons belong to different primes: {first} and {second}")


class SpanMismatch(NewtonPolygonError):
    pass


class NotPrPure(NewtonPolygonError):
    """합성 대상 g가 p^r-순수(정규화 포함)가 아님"""


class HypothesisViolation(NewtonPolygonError):
    """|s| >= r 인 기울기가 존재하여 신장 정리의 가정이 깨짐"""

    def __init__(self, slope: Fraction, r: int):
        self.slope = slope
        self.r = r
        super().__init__(f"hypotheses violated: |slope {slope}| >= r={r}")


class NotDumas(NewtonPolygonError):
    pass


class DegreeCapExceeded(NewtonPolygonError):
    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f"degree {degree} exceeds the configured cap {cap}")


class EmptySpec(NewtonPolygonError):
    def __init__(self, message: Optional[str] = None):
        super().__init__(message or "plot specification has no layers")
