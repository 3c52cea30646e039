"""
정리별 무작위 시행: 표본 생성과 정확한 비교.

각 시행의 난수열은 (정리, 시드, 시행 번호) 에서만 유도되므로
병렬 실행 여부와 순서에 관계없이 같은 입력이 만들어집니다.
"""
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from app.newton.domain.newton_polygon import newton_polygon
from app.newton.domain.polygon_laws import predict_composition, predict_product, region_contains, union_lower_bound
from app.newton.domain.polynomial import Polynomial, compose, power
from app.newton.domain.polynomial_parser import format_polynomial

PRIMES = (2, 3, 5, 7)

# 정리별 기본 차수 상한
DEFAULT_MAX_DEGREE = {
    "stretch": 12,
    "product": 30,
    "sum": 10,
    "power-purity": 6,
}

THEOREMS = tuple(DEFAULT_MAX_DEGREE)


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    passed: bool
    inputs: Dict[str, str] = field(default_factory=dict)
    detail: str = ""


def trial_rng(theorem: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{theorem}:{seed}:{trial}")


def random_unit(rng: random.Random, p: int) -> Fraction:
    """p 와 서로소인 분자/분모의 부호 있는 유리수 (ord_p = 0)."""
    numerator = rng.choice([k for k in range(1, 30) if k % p])
    denominator = rng.choice([k for k in range(1, 10) if k % p])
    sign = rng.choice((-1, 1))
    return Fraction(sign * numerator, denominator)


def with_valuation(rng: random.Random, p: int, valuation: int) -> Fraction:
    return random_unit(rng, p) * Fraction(p) ** valuation


def random_polynomial(
    rng: random.Random,
    p: int,
    max_degree: int,
    low: int,
    high: int,
    density: float = 0.7,
) -> Polynomial:
    """값매김이 [low, high] 인 계수를 확률 density 로 채운 다항식 (최고차 계수는 항상 채움)."""
    degree = rng.randint(1, max_degree)
    coefficients = [
        with_valuation(rng, p, rng.randint(low, high)) if rng.random() < density else Fraction(0)
        for _ in range(degree)
    ]
    coefficients.append(with_valuation(rng, p, rng.randint(low, high)))
    return Polynomial(tuple(coefficients))


def random_pr_pure(rng: random.Random, p: int, r: int, d: int) -> Polynomial:
    """
    p^r-순수 g = u·x^d + Σ c_i x^i + p^r·w.
    중간 계수는 ord_p c_i ≥ ceil(r(1 − i/d)) 로 선분 (0, r)–(d, 0) 위나 그 위쪽에 놓입니다.
    """
    coefficients = [with_valuation(rng, p, r)]
    for i in range(1, d):
        if rng.random() < 0.5:
            floor_height = math.ceil(Fraction(r * (d - i), d))
            coefficients.append(with_valuation(rng, p, floor_height + rng.randint(0, 2)))
        else:
            coefficients.append(Fraction(0))
    coefficients.append(random_unit(rng, p))
    return Polynomial(tuple(coefficients))


def random_bounded_slope(rng: random.Random, p: int, r: int, max_degree: int) -> Polynomial:
    """
    f(0) ≠ 0 이고 모든 기울기의 크기가 r 미만인 f.

    인접한 지지점 사이 (간격 Δi) 의 값매김 변화를 |Δv| ≤ rΔi − 1 로 제한하면
    어떤 현(chord)의 기울기도 크기가 r 미만이 됩니다. 값매김은 [−3, 6] 에 머뭅니다.
    """
    degree = rng.randint(1, max_degree)
    support = [0] + [i for i in range(1, degree) if rng.random() < 0.7] + [degree]
    coefficients = [Fraction(0)] * (degree + 1)
    valuation = rng.randint(-3, 6)
    previous = 0
    for index in support:
        if index:
            bound = r * (index - previous) - 1
            valuation = min(6, max(-3, valuation + rng.randint(-bound, bound)))
        coefficients[index] = with_valuation(rng, p, valuation)
        previous = index
    return Polynomial(tuple(coefficients))


def _stretch_trial(rng: random.Random, max_degree: int) -> Tuple[bool, Dict[str, str], str]:
    p = rng.choice(PRIMES)
    r = rng.randint(1, 4)
    d = rng.randint(2, 6)
    f = random_bounded_slope(rng, p, r, max_degree)
    g = random_pr_pure(rng, p, r, d)
    predicted = predict_composition(newton_polygon(f, p), newton_polygon(g, p))
    actual = newton_polygon(compose(f, g), p)
    inputs = {"p": str(p), "f": format_polynomial(f), "g": format_polynomial(g)}
    return predicted == actual, inputs, f"predicted {predicted.vertices}, actual {actual.vertices}"


def _product_trial(rng: random.Random, max_degree: int) -> Tuple[bool, Dict[str, str], str]:
    p = rng.choice(PRIMES)
    f = random_polynomial(rng, p, max_degree, -5, 10)
    g = random_polynomial(rng, p, max_degree, -5, 10)
    predicted = predict_product(newton_polygon(f, p), newton_polygon(g, p))
    actual = newton_polygon(f * g, p)
    inputs = {"p": str(p), "f": format_polynomial(f), "g": format_polynomial(g)}
    return predicted == actual, inputs, f"predicted {predicted.vertices}, actual {actual.vertices}"


def _sum_trial(rng: random.Random, max_degree: int) -> Tuple[bool, Dict[str, str], str]:
    p = rng.choice(PRIMES)
    summands = [random_polynomial(rng, p, max_degree, -3, 6) for _ in range(rng.randint(2, 4))]
    total = summands[0]
    for summand in summands[1:]:
        total = total + summand
    inputs = {"p": str(p)}
    inputs.update({f"f{index + 1}": format_polynomial(f) for index, f in enumerate(summands)})
    if total.is_zero:
        return True, inputs, "sum vanished"
    region = union_lower_bound([newton_polygon(f, p) for f in summands])
    actual = newton_polygon(total, p)
    return region_contains(actual, region), inputs, f"sum {actual.vertices}, bound {region.vertices}"


def _power_purity_trial(rng: random.Random, max_degree: int) -> Tuple[bool, Dict[str, str], str]:
    p = rng.choice(PRIMES)
    r = rng.randint(1, 4)
    d = rng.randint(1, max(1, max_degree))
    k = rng.randint(1, 5)
    g = random_pr_pure(rng, p, r, d)
    actual = newton_polygon(power(g, k), p)
    expected = ((0, k * r), (k * d, 0))
    inputs = {"p": str(p), "g": format_polynomial(g), "k": str(k)}
    return actual.vertices == expected, inputs, f"vertices {actual.vertices}, expected {expected}"


_TRIALS: Dict[str, Callable[[random.Random, int], Tuple[bool, Dict[str, str], str]]] = {
    "stretch": _stretch_trial,
    "product": _product_trial,
    "sum": _sum_trial,
    "power-purity": _power_purity_trial,
}


def run_trial(theorem: str, seed: int, trial: int, max_degree: Optional[int] = None) -> TrialOutcome:
    """한 번의 시행을 실행합니다. 프로세스 풀에서 호출되므로 모듈 최상위 함수입니다."""
    bound = max_degree if max_degree is not None else DEFAULT_MAX_DEGREE[theorem]
    passed, inputs, detail = _TRIALS[theorem](trial_rng(theorem, seed, trial), bound)
    return TrialOutcome(trial=trial, passed=passed, inputs=inputs, detail="" if passed else detail)


def run_trials(theorem: str, seed: int, trials: List[int], max_degree: Optional[int] = None) -> List[TrialOutcome]:
    return [run_trial(theorem, seed, trial, max_degree) for trial in trials]
