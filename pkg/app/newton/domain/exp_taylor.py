"""
지수함수 테일러 다항식 f_n = 1 + x + x²/2! + ... + xⁿ/n! 과 그 p진 기울기 공식.
"""
from fractions import Fraction
from typing import List, Tuple

from sympy.ntheory import digits

from app.newton.domain.exact_number import ensure_prime
from app.newton.domain.polynomial import Polynomial


def taylor_exp(n: int) -> Polynomial:
    """차수 n의 테일러 다항식 (계수 1/k!)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    coefficients = []
    running = 1
    for k in range(n + 1):
        if k:
            running *= k
        coefficients.append(Fraction(1, running))
    return Polynomial(tuple(coefficients))


def base_p_digits(n: int, p: int) -> List[Tuple[int, int]]:
    """n = Σ b_i p^{n_i} 의 0이 아닌 자릿수 (위치 n_i, 자릿수 b_i), 위치 오름차순."""
    most_significant_first = digits(n, p)[1:]
    width = len(most_significant_first)
    return [
        (width - 1 - index, digit)
        for index, digit in enumerate(most_significant_first)
        if digit
    ][::-1]


def exp_slope(position: int, p: int, d_power: int = 1) -> Fraction:
    """자릿수 위치 n_i 에 대응하는 기울기 −(p^{n_i}−1) / (d^m · p^{n_i} · (p−1))."""
    scale = p ** position
    return Fraction(-(scale - 1), d_power * scale * (p - 1))


def exp_slopes(n: int, p: int) -> List[Tuple[Fraction, int]]:
    """
    NP_p(f_n) 의 (기울기, 길이) 목록을 자릿수 공식으로 구합니다 (기울기 오름차순).

    Args:
        n: 테일러 차수 (n ≥ 1)
        p: 소수

    Returns:
        각 비영 자릿수 b_i 마다 기울기 −(p^{n_i}−1)/(p^{n_i}(p−1)), 길이 b_i·p^{n_i}
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    ensure_prime(p)
    pieces = [(exp_slope(position, p), digit * p ** position) for position, digit in base_p_digits(n, p)]
    return sorted(pieces, key=lambda piece: piece[0])


def composed_exp_slopes(n: int, p: int, d: int, m: int) -> List[Tuple[Fraction, int]]:
    """f_n ∘ g^{∘m} (deg g = d) 에 대해 예측되는 기울기와 길이."""
    d_power = d ** m
    pieces = [
        (exp_slope(position, p, d_power), digit * p ** position * d_power)
        for position, digit in base_p_digits(n, p)
    ]
    return sorted(pieces, key=lambda piece: piece[0])

