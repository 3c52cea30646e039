import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.newton.application.property_trials import THEOREMS, TrialOutcome, run_trials

logger = logging.getLogger(__name__)


class Counterexample(BaseModel):
    """재현 가능한 첫 반례 (시드와 시행 번호로 같은 입력을 다시 만들 수 있음)"""
    seed: int
    trial: int
    inputs: Dict[str, str]
    detail: str


class VerificationSummary(BaseModel):
    """verify 명령 응답"""
    theorem: str
    seed: int
    trials: int
    passed: int
    failed: int
    counterexample: Optional[Counterexample] = None

    @property
    def all_passed(self) -> bool:
        return self.failed == 0


class VerificationRequest(BaseModel):
    theorem: str
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, le=2**64 - 1)
    max_degree: Optional[int] = Field(default=None, ge=1)


class VerificationService:
    """
    정리별 무작위 검증 서비스
    """

    def __init__(self, jobs: int = 1):
        """
        서비스 초기화

        Args:
            jobs: 병렬 작업 프로세스 수 (1이면 현재 프로세스에서 순차 실행)
        """
        self.jobs = jobs

    def run(
        self,
        theorem: str,
        trials: int,
        seed: int,
        max_degree: Optional[int] = None,
    ) -> VerificationSummary:
        """
        시행을 실행하고 시행 번호 순서대로 결과를 모읍니다.

        Args:
            theorem: stretch, product, sum, power-purity 중 하나
            trials: 시행 횟수
            seed: 64비트 부호 없는 시드
            max_degree: 표본 다항식 차수 상한 (생략 시 정리별 기본값)

        Returns:
            VerificationSummary: 통과/실패 수와 첫 반례

        Raises:
            ValueError: 알 수 없는 정리 이름이나 잘못된 범위
        """
        request = VerificationRequest(theorem=theorem, trials=trials, seed=seed, max_degree=max_degree)
        if request.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")

        try:
            outcomes = self._execute(request)
            failures = [outcome for outcome in outcomes if not outcome.passed]
            counterexample = None
            if failures:
                first = failures[0]
                counterexample = Counterexample(
                    seed=request.seed, trial=first.trial, inputs=first.inputs, detail=first.detail
                )
                logger.warning(f"반례 발견: {request.theorem}, seed={request.seed}, trial={first.trial}")
            logger.info(
                f"검증 완료: {request.theorem}, 통과 {len(outcomes) - len(failures)}개, 실패 {len(failures)}개"
            )
            return VerificationSummary(
                theorem=request.theorem,
                seed=request.seed,
                trials=request.trials,
                passed=len(outcomes) - len(failures),
                failed=len(failures),
                counterexample=counterexample,
            )
        except Exception as e:
            logger.error(f"검증 실행 중 오류 발생: {str(e)}")
            raise e

    def _execute(self, request: VerificationRequest) -> List[TrialOutcome]:
        indices = list(range(request.trials))
        if self.jobs <= 1 or request.trials == 1:
            return run_trials(request.theorem, request.seed, indices, request.max_degree)

        # 시행 번호 구간을 나눠 제출하고 제출 순서대로 모음
        chunk = max(1, -(-request.trials // (self.jobs * 4)))
        batches = [indices[start:start + chunk] for start in range(0, request.trials, chunk)]
        outcomes: List[TrialOutcome] = []
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            futures = [
                executor.submit(run_trials, request.theorem, request.seed, batch, request.max_degree)
                for batch in batches
            ]
            for future in futures:
                outcomes.extend(future.result())
        return outcomes
