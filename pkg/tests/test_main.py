import json

from app.config.settings import settings
from app.main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_np_text_output(capsys):
    """기호 p 는 --prime 값으로 치환"""
    code, out, _ = run(capsys, "np", "--poly", "p + x^2 + p^3*x^6", "--prime", "5")
    assert code == 0
    assert "f = 5 + x^2 + 125*x^6" in out
    assert "vertices: (0, 1) (2, 0) (6, 3)" in out
    assert "  slope -1/2, length 2" in out
    assert "  slope 3/4, length 4" in out
    assert "purity: not pure (2 segments)" in out
    assert "root valuations: 1/2 x2, -3/4 x4" in out


def test_np_monomial(capsys):
    code, out, _ = run(capsys, "np", "--poly", "x^3", "--prime", "3")
    assert code == 0
    assert "segments: no segments" in out
    assert "root valuations: +inf x3" in out
    assert "purity: n/a" in out


def test_np_json(capsys):
    code, out, _ = run(capsys, "np", "--poly", "x^2 - 2", "--prime", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["polygon"] == {
        "prime": "2",
        "x_offset": 0,
        "vertices": [[0, 1], [2, 0]],
        "segments": [{"slope": "-1/2", "length": 2}],
    }
    assert payload["purity"]["classification"] == "dumas"


def test_np_ascii(capsys):
    code, out, _ = run(capsys, "np", "--poly", "5 + x^2 + 125*x^6", "--prime", "5", "--ascii")
    assert code == 0
    grid = [line for line in out.splitlines() if not line.startswith("[")]
    assert sum(line.count("*") for line in grid) == 3
    assert "slopes -1/2, 3/4" in out


def test_np_rejects_non_prime(capsys):
    code, out, err = run(capsys, "np", "--poly", "x + 1", "--prime", "4")
    assert code == 3
    assert out == ""
    assert "4 is not a prime" in err


def test_np_reports_parse_position(capsys):
    code, _, err = run(capsys, "np", "--poly", "x^^2", "--prime", "2")
    assert code == 2
    assert "position 2" in err


def test_np_accepts_coefficient_array(capsys):
    code, out, _ = run(capsys, "np", "--poly", ' ["5", "0", "1", "0", "0", "0", "125"]', "--prime", "5")
    assert code == 0
    assert "f = 5 + x^2 + 125*x^6" in out
    assert "vertices: (0, 1) (2, 0) (6, 3)" in out


def test_coefficient_array_with_rationals_in_compose(capsys):
    code, out, _ = run(capsys, "compose", "--f", '["1/5", "1"]', "--g", '["5", "0", "1"]', "--prime", "5")
    assert code == 0
    assert "composition degree: 2" in out


def test_malformed_coefficient_array(capsys):
    code, _, err = run(capsys, "np", "--poly", "[2, 0, 1]", "--prime", "2")
    assert code == 2
    assert "invalid coefficient array" in err
    code, _, err = run(capsys, "np", "--poly", '["2", "1/0"]', "--prime", "2")
    assert code == 2
    assert "zero denominator" in err


def test_coefficient_array_over_cap(capsys):
    code, _, err = run(capsys, "np", "--poly", '["1", "0", "0", "1"]', "--prime", "2", "--cap", "2")
    assert code == 3
    assert "degree 3 exceeds the configured cap 2" in err


def test_compose_prediction_matches(capsys):
    code, out, _ = run(capsys, "compose", "--f", "5 + x^2 + 125*x^6", "--g", "x^3 + 5", "--prime", "5")
    assert code == 0
    assert "composition degree: 18" in out
    assert "predicted polygon (r=1):" in out
    assert "prediction matches" in out


def test_compose_reports_violated_hypotheses(capsys):
    code, out, _ = run(capsys, "compose", "--f", "p^2 + x + p^2*x^2", "--g", "p + x^2", "--prime", "5")
    assert code == 0
    assert "hypotheses violated: |slope 2| >= r=1" in out
    assert "naive stretch (no guarantee):" in out
    assert "vertices: (0, 1) (2, 0) (4, 2)" in out


def test_compose_auto_partner(capsys):
    code, out, _ = run(
        capsys, "compose", "--f", "5 + x^2 + 125*x^6", "--prime", "5", "--auto-partner", "--epsilon", "1/4"
    )
    assert code == 0
    assert "partner: g = 5 + x^4 (r=1, d=4)" in out
    assert "prediction matches" in out


def test_auto_partner_rejects_explicit_partner(capsys):
    base = ["compose", "--f", "5 + x^2 + 125*x^6", "--prime", "5", "--auto-partner", "--epsilon", "1/4"]
    code, out, err = run(capsys, *base, "--g", "x^3 + 5")
    assert code == 2
    assert out == ""
    assert "--auto-partner" in err
    code, _, _ = run(capsys, *base, "--iterate", "2")
    assert code == 2


def test_compose_requires_g(capsys):
    code, _, err = run(capsys, "compose", "--f", "x + 1", "--prime", "2")
    assert code == 2
    assert "--g" in err


def test_compose_over_cap(capsys):
    code, _, err = run(capsys, "compose", "--f", "x^2 + 2", "--g", "x^2 + 2", "--iterate", "20", "--prime", "2")
    assert code == 3
    assert "exceeds the configured cap" in err


def test_check_certificate(capsys):
    code, out, _ = run(capsys, "check", "--poly", "x^3 + 25", "--prime", "5")
    assert code == 0
    assert "certificate: Eisenstein-Dumas at p=5, height 2" in out
    assert "(replay ok)" in out


def test_check_without_certificate(capsys):
    code, out, _ = run(capsys, "check", "--poly", "x^4 + 4", "--prime", "2")
    assert code == 0
    assert "certificate: none" in out


def test_certify_exp_taylor(capsys):
    code, out, _ = run(capsys, "certify", "--exp-n", "4", "--primes", "2")
    assert code == 0
    assert "p=2: slopes -3/4; forced divisor 4" in out
    assert "verdict: certified_irreducible" in out


def test_certify_inconclusive_exits_one(capsys):
    code, out, _ = run(capsys, "certify", "--poly", "(x^2 - 2)*(x^2 - 3)", "--primes", "2")
    assert code == 1
    assert "verdict: inconclusive" in out


def test_certify_json(capsys):
    code, out, _ = run(capsys, "certify", "--exp-n", "4", "--compose", "x^5 + 8", "--iterate", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["certificate"]["primes"] == [{"p": "2", "slopes": ["-3/20"], "forced_divisor": 20}]
    assert payload["certificate"]["verdict"] == "certified_irreducible"


def test_certify_dynamical(capsys):
    code, out, _ = run(capsys, "certify", "--poly", "x^2 + 2", "--dynamical", "--iterate", "3", "--primes", "2")
    assert code == 0
    assert "m=3: degree 8, slope -1/8 (expected -1/8) certified" in out


def test_certify_poly_needs_primes(capsys):
    code, _, _ = run(capsys, "certify", "--poly", "x^2 - 2")
    assert code == 3


def test_exp_taylor(capsys):
    code, out, _ = run(capsys, "exp-taylor", "--n", "10", "--prime", "2")
    assert code == 0
    assert "predicted slopes: -7/8 (length 8), -1/2 (length 2)" in out
    assert "formula matches: yes" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "product", "--trials", "20", "--seed", "42")
    assert code == 0
    assert "seed: 42" in out
    assert "passed: 20" in out
    assert "failed: 0" in out


def test_verify_rejects_unknown_theorem(capsys):
    code, _, _ = run(capsys, "verify", "--theorem", "riemann")
    assert code == 2


def test_render_svg_is_byte_identical(capsys, tmp_path):
    arguments = ["render", "--poly", "3 + x^2 + 9*x^3", "--poly", "9 + x + 3*x^3", "--prime", "3", "--union"]
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, *arguments, "--svg", str(first))[0] == 0
    assert run(capsys, *arguments, "--svg", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert b'data-style="bold"' in first.read_bytes()


def test_render_json_union(capsys):
    code, out, _ = run(
        capsys, "render", "--poly", "3 + x^2 + 9*x^3", "--poly", "9 + x + 3*x^3", "--prime", "3", "--union", "--json"
    )
    assert code == 0
    assert json.loads(out)["union"]["vertices"] == [[0, 1], [1, 0], [2, 0], [3, 1]]


def test_render_tick_outside_span(capsys):
    code, _, _ = run(capsys, "render", "--poly", "x^2 - 2", "--prime", "2", "--x-ticks", "0,5")
    assert code == 3


def test_invalid_cap_flag(capsys):
    code, _, _ = run(capsys, "np", "--poly", "x + 1", "--prime", "2", "--cap", "0")
    assert code == 2


def test_cap_from_environment_settings(capsys, monkeypatch):
    monkeypatch.setattr(settings, "PADIC_NEWTON_CAP", 10)
    code, _, err = run(capsys, "np", "--poly", "x^11 + 1", "--prime", "2")
    assert code == 3
    assert "cap 10" in err
    code, _, _ = run(capsys, "np", "--poly", "x^11 + 1", "--prime", "2", "--cap", "20")
    assert code == 0
