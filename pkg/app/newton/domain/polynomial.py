"""
유리수 계수 조밀(dense) 일변수 다항식과 합성/반복.

계수는 지수 0..n 순서의 ``Fraction`` 튜플이며 끝의 0은 항상 제거됩니다.
영다항식은 빈 튜플이고 차수는 ``None``(정의되지 않음)입니다.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.newton.domain.errors import DegreeCapExceeded
from app.newton.domain.exact_number import format_rational, parse_rational

# iterate/compose의 기본 차수 상한
DEFAULT_DEGREE_CAP = 100_000

# 이 길이 이상이면 정수 곱셈을 크로네커 치환으로 수행
KRONECKER_THRESHOLD = 24

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Polynomial:
    """
    Q[x]의 원소. 불변이며 스레드 간 공유 가능합니다.
    """
    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, value: Scalar, exponent: int) -> "Polynomial":
        return cls((Fraction(0),) * exponent + (Fraction(value),))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls.monomial(1, 1)

    @property
    def degree(self) -> Optional[int]:
        """차수. 영다항식이면 None."""
        if not self.coefficients:
            return None
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    @property
    def constant_term(self) -> Fraction:
        return self.coefficients[0] if self.coefficients else Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __getitem__(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coefficients):
            return self.coefficients[exponent]
        return Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        return power(self, exponent)

    def __call__(self, value: Scalar) -> Fraction:
        return evaluate(self, value)

    def __str__(self) -> str:
        from app.newton.domain.polynomial_parser import format_polynomial

        return format_polynomial(self)


ZERO = Polynomial()
ONE = Polynomial.constant(1)
X = Polynomial.x()


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    """계수별 합 (끝의 0 제거)."""
    longer, shorter = (f, g) if len(f.coefficients) >= len(g.coefficients) else (g, f)
    coefficients = list(longer.coefficients)
    for index, value in enumerate(shorter.coefficients):
        coefficients[index] += value
    return Polynomial(tuple(coefficients))


def scale(f: Polynomial, factor: Scalar) -> Polynomial:
    factor = Fraction(factor)
    return Polynomial(tuple(c * factor for c in f.coefficients))


def integer_form(f: Polynomial) -> Tuple[List[int], int]:
    """f = (정수 계수 리스트) / 공통분모 로 분해합니다."""
    denominator = lcm(*(c.denominator for c in f.coefficients)) if f.coefficients else 1
    return [c.numerator * (denominator // c.denominator) for c in f.coefficients], denominator


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> List[int]:
    result = [0] * (len(a) + len(b) - 1)
    for i, left in enumerate(a):
        if left == 0:
            continue
        for j, right in enumerate(b):
            result[i + j] += left * right
    return result


def _pack(values: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in values), "little")


def _unpack(value: int, width: int, count: int) -> List[int]:
    raw = value.to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def _kronecker_nonnegative(a: Sequence[int], b: Sequence[int]) -> List[int]:
    count = len(a) + len(b) - 1
    bound = max(a) * max(b) * min(len(a), len(b))
    if bound == 0:
        return [0] * count
    width = bound.bit_length() // 8 + 1
    return _unpack(_pack(a, width) * _pack(b, width), width, count)


def _kronecker(a: Sequence[int], b: Sequence[int]) -> List[int]:
    # 부호를 양/음 부분으로 분리해 네 번의 음이 아닌 곱으로 처리
    a_pos = [max(v, 0) for v in a]
    a_neg = [max(-v, 0) for v in a]
    b_pos = [max(v, 0) for v in b]
    b_neg = [max(-v, 0) for v in b]
    terms = (
        (1, _kronecker_nonnegative(a_pos, b_pos)),
        (-1, _kronecker_nonnegative(a_pos, b_neg)),
        (-1, _kronecker_nonnegative(a_neg, b_pos)),
        (1, _kronecker_nonnegative(a_neg, b_neg)),
    )
    result = [0] * (len(a) + len(b) - 1)
    for sign, partial in terms:
        for index, value in enumerate(partial):
            result[index] += sign * value
    return result


def convolve(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """정수 계수 리스트의 곱. 짧으면 교과서 방식, 길면 크로네커 치환."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return _schoolbook(a, b)
    return _kronecker(a, b)


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """합성곱. 둘 다 0이 아니면 deg(fg) = deg f + deg g."""
    if f.is_zero or g.is_zero:
        return ZERO
    a, a_denominator = integer_form(f)
    b, b_denominator = integer_form(g)
    denominator = a_denominator * b_denominator
    return Polynomial(tuple(Fraction(c, denominator) for c in convolve(a, b)))


def power(f: Polynomial, k: int) -> Polynomial:
    """k제곱 (제곱을 통한 거듭제곱). power(f, 0) = 1."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = ONE
    base = f
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def _check_cap(degree: int, cap: int) -> None:
    if degree > cap:
        raise DegreeCapExceeded(degree, cap)


def composed_degree(f: Polynomial, g: Polynomial) -> int:
    if f.is_zero or g.is_zero:
        return 0
    return f.degree * g.degree


def compose(f: Polynomial, g: Polynomial, cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    """
    f∘g 를 f의 계수에 대한 호너 점화식으로 계산합니다.

    Raises:
        DegreeCapExceeded: deg f · deg g 가 상한을 넘을 때
    """
    _check_cap(composed_degree(f, g), cap)
    if f.is_zero:
        return ZERO
    if g.is_zero:
        return Polynomial.constant(f.constant_term)
    b, b_denominator = integer_form(g)
    # 정수 계수 위에서 호너: F(x) = Σ a_i g^i, g = B / den 이므로 den^(n-i) 가중
    numerators, a_denominator = integer_form(f)
    n = len(numerators) - 1
    accumulator = [numerators[n]]
    for index in range(n - 1, -1, -1):
        accumulator = convolve(accumulator, b)
        accumulator[0] += numerators[index] * b_denominator ** (n - index)
    denominator = a_denominator * b_denominator ** n
    return Polynomial(tuple(Fraction(c, denominator) for c in accumulator))


def iterate(g: Polynomial, m: int, cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    """
    g의 m번 자기 합성. iterate(g, 0) = x.

    Raises:
        DegreeCapExceeded: deg(g)^m 이 상한을 넘을 때
    """
    if m < 0:
        raise ValueError("iteration count must be nonnegative")
    if m == 0:
        return X
    if not g.is_zero and g.degree >= 2:
        _check_cap(g.degree ** m, cap)
    result = g
    for _ in range(m - 1):
        result = compose(result, g, cap)
    return result


def evaluate(f: Polynomial, a: Scalar) -> Fraction:
    """호너 방식으로 f(a)를 계산합니다."""
    a = Fraction(a)
    result = Fraction(0)
    for value in reversed(f.coefficients):
        result = result * a + value
    return result


def primitive_integer_scaling(f: Polynomial) -> Tuple[Fraction, Polynomial]:
    """
    scale·f 가 Z[x]의 원시 다항식(계수 gcd 1, 최고차 계수 양수)이 되는 (scale, scale·f).
    상수배는 뉴턴 다각형을 수직 이동만 시킵니다.
    """
    if f.is_zero:
        return Fraction(1), f
    integers, denominator = integer_form(f)
    content = gcd(*integers)
    factor = Fraction(denominator, content)
    if f.leading_coefficient < 0:
        factor = -factor
    return factor, scale(f, factor)


def from_coefficient_strings(values: Iterable[str]) -> Polynomial:
    """JSON 배열 형태 ``["c0", "c1", ...]`` 로부터 다항식을 만듭니다."""
    return Polynomial(tuple(parse_rational(str(value)) for value in values))


def to_coefficient_strings(f: Polynomial) -> List[str]:
    return [format_rational(c) for c in f.coefficients]
