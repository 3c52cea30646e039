"""
정확 산술 기본 요소: 임의 정밀도 정수/유리수와 p진 값매김(valuation).

BigInt는 파이썬 ``int``, BigRational은 ``fractions.Fraction``(항상 기약분수, 분모 양수)으로
표현합니다. 값매김은 유한 정수이거나 ``INFINITY``(ord_p(0))입니다.
"""
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime

from app.newton.domain.errors import NotPrime, ParseError

# int(str) / str(int) 변환 자릿수 제한(기본 4300)을 피하기 위한 분할 기준
_DIGIT_CHUNK = 4000

# JSON 숫자로 안전하게 표현 가능한 정수 범위
JSON_SAFE_INTEGER = 2**53 - 1

_RATIONAL_PATTERN = re.compile(r"\s*([+-]?)(\d+)(?:\s*/\s*(\d+))?\s*")


class Infinity:
    """
    확장 값매김의 +∞ 원소 (싱글턴).

    모든 유한 값보다 크고, 유한 값과 더해도 +∞입니다.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (Infinity, ())

    def __repr__(self):
        return "+Infinity"

    def __str__(self):
        return "+inf"

    def __hash__(self):
        return hash("padic-newton:+inf")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return other is self
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return other is not self
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__


INFINITY = Infinity()

# 유한 정수 또는 +∞
Valuation = Union[int, Infinity]


def is_finite(value: Valuation) -> bool:
    return value is not INFINITY


@lru_cache(maxsize=1024)
def _checked_prime(p: int) -> bool:
    # 2^64 미만은 결정적, 그 이상은 BPSW 확률 판정
    return p >= 2 and isprime(p)


def ensure_prime(p: int) -> int:
    """
    API 경계에서 한 번 소수성을 검사합니다. 내부 연산은 검사된 소수를 신뢰합니다.

    Raises:
        NotPrime: p가 소수가 아닐 때
    """
    if isinstance(p, bool) or not isinstance(p, int) or not _checked_prime(p):
        raise NotPrime(p)
    return p


def int_valuation(n: int, p: int) -> Valuation:
    """소수 검사 없이 ord_p(n)을 계산합니다 (내부용)."""
    if n == 0:
        return INFINITY
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1

    # p, p^2, p^4, ... 로 올라간 뒤 이진 분해로 내려옴
    powers = []
    power = p
    while n % power == 0:
        powers.append(power)
        power = power * power

    exponent = 0
    for index in reversed(range(len(powers))):
        if n % powers[index] == 0:
            n //= powers[index]
            exponent += 1 << index
    return exponent


def rational_valuation(q: Fraction, p: int) -> Valuation:
    """소수 검사 없이 ord_p(q) = ord_p(분자) - ord_p(분모)를 계산합니다 (내부용)."""
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


def ord_int(n: int, p: int) -> Valuation:
    """
    정수 n의 p진 값매김.

    Args:
        n: 임의 크기 정수
        p: 소수

    Returns:
        Valuation: p^e | n 인 최대 e, n = 0 이면 INFINITY

    Raises:
        NotPrime: p가 소수가 아닐 때
    """
    ensure_prime(p)
    return int_valuation(n, p)


def ord_rat(q: Fraction, p: int) -> Valuation:
    """
    유리수 q의 p진 값매김 (곱셈적으로 확장).

    Raises:
        NotPrime: p가 소수가 아닐 때
    """
    ensure_prime(p)
    return rational_valuation(q, p)


def parse_decimal(digits: str) -> int:
    """자릿수 제한 없이 부호 없는 십진 문자열을 정수로 변환합니다."""
    if len(digits) <= _DIGIT_CHUNK:
        return int(digits)
    split = len(digits) // 2
    low = digits[split:]
    return parse_decimal(digits[:split]) * 10 ** len(low) + parse_decimal(low)


def decimal_string(n: int) -> str:
    """자릿수 제한 없이 정수를 십진 문자열로 변환합니다."""
    if n < 0:
        return "-" + decimal_string(-n)
    # 비트 수 * log10(2) ≈ 자릿수
    if n.bit_length() * 3 // 10 < _DIGIT_CHUNK:
        return str(n)
    half = n.bit_length() * 3 // 20
    high, low = divmod(n, 10**half)
    return decimal_string(high) + decimal_string(low).rjust(half, "0")


def parse_rational(text: str) -> Fraction:
    """
    유리수 리터럴 ``a``, ``-a``, ``a/b`` (b > 0)를 파싱합니다.

    Raises:
        ParseError: 형식이 맞지 않거나 분모가 0일 때
    """
    match = _RATIONAL_PATTERN.fullmatch(text)
    if match is None:
        raise ParseError(0, f"invalid rational literal {text!r}")
    sign, numerator, denominator = match.groups()
    value = Fraction(parse_decimal(numerator))
    if denominator is not None:
        denominator_value = parse_decimal(denominator)
        if denominator_value == 0:
            raise ParseError(match.start(3), "zero denominator")
        value /= denominator_value
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    """기약분수 문자열 (``a`` 또는 ``a/b``)."""
    q = Fraction(q)
    if q.denominator == 1:
        return decimal_string(q.numerator)
    return f"{decimal_string(q.numerator)}/{decimal_string(q.denominator)}"


def format_valuation(value: Valuation) -> str:
    return "+inf" if value is INFINITY else format_rational(Fraction(value))


def json_integer(n: int) -> Union[int, str]:
    """안전 범위 안이면 JSON 숫자, 밖이면 십진 문자열."""
    return n if abs(n) <= JSON_SAFE_INTEGER else decimal_string(n)
