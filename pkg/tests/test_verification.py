import pytest
from pydantic import ValidationError

from app.newton.application import property_trials
from app.newton.application.property_trials import run_trial, trial_rng
from app.newton.application.verification_service import VerificationService


@pytest.fixture
def service():
    return VerificationService(jobs=1)


@pytest.mark.parametrize(
    "theorem, trials, seed",
    [
        ("product", 1000, 42),
        ("stretch", 1000, 7),
        ("sum", 1000, 1),
        ("power-purity", 300, 3),
    ],
)
def test_theorems_hold_on_random_trials(service, theorem, trials, seed):
    summary = service.run(theorem, trials, seed)
    assert summary.passed == trials
    assert summary.failed == 0
    assert summary.counterexample is None
    assert summary.all_passed


def test_trial_inputs_depend_only_on_theorem_seed_and_index():
    first = [trial_rng("stretch", 9, index).random() for index in range(5)]
    second = [trial_rng("stretch", 9, index).random() for index in reversed(range(5))][::-1]
    assert first == second
    assert trial_rng("stretch", 9, 0).random() != trial_rng("product", 9, 0).random()
    assert run_trial("product", 5, 17) == run_trial("product", 5, 17)


def test_parallel_run_matches_sequential_run():
    sequential = VerificationService(jobs=1).run("product", 40, 11)
    parallel = VerificationService(jobs=2).run("product", 40, 11)
    assert parallel == sequential


def test_max_degree_is_respected(service):
    summary = service.run("product", 50, 2, max_degree=3)
    assert summary.all_passed


def test_unknown_theorem(service):
    with pytest.raises(ValueError):
        service.run("riemann", 10, 0)


def test_invalid_ranges(service):
    with pytest.raises(ValidationError):
        service.run("product", 0, 0)
    with pytest.raises(ValidationError):
        service.run("product", 10, 2**64)


def test_first_counterexample_is_reported(service, monkeypatch):
    def odd_values_fail(rng, max_degree):
        value = rng.randint(0, 10**6)
        return value % 2 == 0, {"value": str(value)}, f"odd value {value}"

    monkeypatch.setitem(property_trials._TRIALS, "product", odd_values_fail)
    summary = service.run("product", 30, 99)
    assert summary.failed > 0
    assert summary.passed + summary.failed == 30
    counterexample = summary.counterexample
    assert counterexample.seed == 99
    expected = next(
        index for index in range(30) if trial_rng("product", 99, index).randint(0, 10**6) % 2
    )
    assert counterexample.trial == expected
    assert counterexample.inputs == {"value": str(trial_rng("product", 99, expected).randint(0, 10**6))}
    assert counterexample.detail.startswith("odd value")
