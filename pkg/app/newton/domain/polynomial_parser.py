"""
다항식 텍스트 문법의 파서와 정규 형식 출력.

문법 (공백 무시)::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := power (['*'] power)*        # 기호/괄호 앞에서는 '*' 생략 가능
    power := atom ['^' 정수]
    atom  := 정수 ['/' 정수] | 'x' | 기호 | '(' expr ')'

기호(예: ``p``)는 ``substitutions`` 로 넘긴 유리수로 치환됩니다.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional

from app.newton.domain.errors import DegreeCapExceeded, ParseError
from app.newton.domain.exact_number import format_rational, parse_decimal
from app.newton.domain.polynomial import (
    DEFAULT_DEGREE_CAP,
    Polynomial,
    X,
    add,
    mul,
    power,
)

_TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_VARIABLE = "x"


@dataclass(frozen=True)
class Token:
    kind: str  # number, name, op, end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            # 끝의 공백만 남은 경우
            break
        number, name, operator = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token("number", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        else:
            if operator not in "+-*/^()":
                raise ParseError(start, f"unexpected character {operator!r}")
            tokens.append(Token("op", operator, start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, substitutions: Mapping[str, Fraction], cap: int):
        self.tokens = tokenize(text)
        self.index = 0
        self.substitutions = {name: Fraction(value) for name, value in substitutions.items()}
        self.cap = cap

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, operator: str) -> bool:
        if self.current.kind == "op" and self.current.text == operator:
            self.index += 1
            return True
        return False

    def expect_number(self, what: str) -> Token:
        token = self.current
        if token.kind != "number":
            found = token.text or "end of input"
            raise ParseError(token.position, f"expected {what}, found {found!r}")
        return self.advance()

    def parse(self) -> Polynomial:
        if self.current.kind == "end":
            raise ParseError(0, "empty polynomial")
        result = self.expression()
        if self.current.kind != "end":
            raise ParseError(self.current.position, f"unexpected {self.current.text!r}")
        return result

    def expression(self) -> Polynomial:
        negative = False
        if self.accept("-"):
            negative = True
        else:
            self.accept("+")
        result = self.term()
        if negative:
            result = -result
        while True:
            if self.accept("+"):
                result = add(result, self.term())
            elif self.accept("-"):
                result = add(result, -self.term())
            else:
                return result

    def _starts_implicit_factor(self) -> bool:
        token = self.current
        return token.kind == "name" or (token.kind == "op" and token.text == "(")

    def term(self) -> Polynomial:
        result = self.power()
        while True:
            if self.accept("*"):
                result = self._checked_product(result, self.power())
            elif self._starts_implicit_factor():
                result = self._checked_product(result, self.power())
            else:
                return result

    def _checked_product(self, left: Polynomial, right: Polynomial) -> Polynomial:
        if not left.is_zero and not right.is_zero and left.degree + right.degree > self.cap:
            raise DegreeCapExceeded(left.degree + right.degree, self.cap)
        return mul(left, right)

    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            exponent_token = self.expect_number("an exponent")
            exponent = parse_decimal(exponent_token.text)
            if not base.is_zero and base.degree * exponent > self.cap:
                raise DegreeCapExceeded(base.degree * exponent, self.cap)
            if base == X:
                return Polynomial.monomial(1, exponent)
            return power(base, exponent)
        return base

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == "number":
            self.advance()
            value = Fraction(parse_decimal(token.text))
            if self.accept("/"):
                denominator_token = self.expect_number("a denominator")
                denominator = parse_decimal(denominator_token.text)
                if denominator == 0:
                    raise ParseError(denominator_token.position, "zero denominator")
                value /= denominator
            return Polynomial.constant(value)
        if token.kind == "name":
            self.advance()
            if token.text == _VARIABLE:
                return X
            if token.text in self.substitutions:
                return Polynomial.constant(self.substitutions[token.text])
            raise ParseError(token.position, f"unknown symbol {token.text!r}")
        if self.accept("("):
            inner = self.expression()
            if not self.accept(")"):
                raise ParseError(self.current.position, "expected ')'")
            return inner
        found = token.text or "end of input"
        raise ParseError(token.position, f"unexpected {found!r}")


def parse_polynomial(
    text: str,
    substitutions: Optional[Mapping[str, Fraction]] = None,
    cap: int = DEFAULT_DEGREE_CAP,
) -> Polynomial:
    """
    텍스트를 다항식으로 파싱합니다.

    Args:
        text: 다항식 텍스트 (예: ``"1/2*x^2 - x + 3"``)
        substitutions: 기호 치환표 (예: ``{"p": 5}``)
        cap: 허용하는 최대 차수

    Returns:
        Polynomial: 표현된 다항식

    Raises:
        ParseError: 문법 오류 (위치 포함)
        DegreeCapExceeded: 표현된 차수가 상한을 넘을 때
    """
    return _Parser(text, substitutions or {}, cap).parse()


def format_polynomial(f: Polynomial) -> str:
    """오름차순 정규 형식 (예: ``5 + x^2 + 125*x^6``). parse_polynomial과 왕복합니다."""
    pieces = []
    for exponent, value in enumerate(f.coefficients):
        if value == 0:
            continue
        magnitude = abs(value)
        if exponent == 0:
            body = format_rational(magnitude)
        else:
            monomial = _VARIABLE if exponent == 1 else f"{_VARIABLE}^{exponent}"
            body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if value < 0 else body)
        else:
            pieces.append(f"- {body}" if value < 0 else f"+ {body}")
    return " ".join(pieces) if pieces else "0"
