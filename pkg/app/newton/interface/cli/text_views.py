"""사람이 읽는 텍스트 출력 형식. 모든 함수는 줄 목록을 돌려줍니다."""
from typing import List

from app.newton.application.irreducibility_service import (
    CheckReport,
    DynamicalReport,
    ExpCompositionReport,
    ExpTaylorReport,
    SlopePiece,
)
from app.newton.application.polygon_service import CompositionReport, PolygonReport
from app.newton.application.schemas import CertificateSchema, PolygonSchema
from app.newton.application.verification_service import VerificationSummary


def polygon_lines(polygon: PolygonSchema, indent: str = "") -> List[str]:
    vertices = " ".join(f"({x}, {y})" for x, y in polygon.vertices)
    lines = [f"{indent}vertices: {vertices}"]
    if not polygon.segments:
        lines.append(f"{indent}segments: no segments")
    else:
        lines.append(f"{indent}segments:")
        lines.extend(
            f"{indent}  slope {segment.slope}, length {segment.length}" for segment in polygon.segments
        )
    return lines


def polygon_report_lines(report: PolygonReport) -> List[str]:
    lines = [f"f = {report.polynomial}", f"prime: {report.polygon.prime}"]
    lines.extend(polygon_lines(report.polygon))
    if report.purity is not None:
        lines.append(f"purity: {report.purity.description}")
    else:
        lines.append(f"purity: n/a ({report.purity_note})")
    roots = ", ".join(f"{item.valuation} x{item.multiplicity}" for item in report.root_valuations)
    lines.append(f"root valuations: {roots}")
    return lines


def composition_lines(report: CompositionReport) -> List[str]:
    lines = [
        f"f = {report.f}",
        f"g = {report.g}",
        f"prime: {report.prime}, iterations: {report.iterations}",
        f"composition degree: {report.actual.vertices[-1][0]}",
        "actual polygon:",
    ]
    lines.extend(polygon_lines(report.actual, indent="  "))
    if report.predicted is not None:
        lines.append(f"predicted polygon (r={report.r}):")
        lines.extend(polygon_lines(report.predicted, indent="  "))
    else:
        lines.append("naive stretch (no guarantee):")
        lines.extend(polygon_lines(report.naive_stretch, indent="  "))
    if report.partner is not None:
        partner = report.partner
        relation = "<" if partner.within_epsilon else ">="
        lines.append(
            f"partner: g = {partner.g} (r={partner.r}, d={partner.d}); "
            f"max root valuation {partner.max_root_valuation} {relation} epsilon {partner.epsilon}"
        )
    lines.append(report.message)
    return lines


def check_lines(report: CheckReport) -> List[str]:
    lines = [f"f = {report.polynomial}", f"prime: {report.prime}", f"purity: {report.purity.description}"]
    certificate = report.certificate
    if certificate is None:
        lines.append("certificate: none")
    else:
        replay = "ok" if report.replayed else "FAILED"
        lines.append(
            f"certificate: Eisenstein-Dumas at p={certificate.prime}, height {certificate.height}, "
            f"gcd({certificate.height}, {certificate.degree}) = {certificate.gcd_witness}; "
            f"irreducible over Q (replay {replay})"
        )
    return lines


def certificate_lines(certificate: CertificateSchema) -> List[str]:
    lines = [f"polynomial: {certificate.polynomial}", f"degree: {certificate.degree}"]
    for evidence in certificate.primes:
        lines.append(
            f"p={evidence.p}: slopes {', '.join(evidence.slopes)}; forced divisor {evidence.forced_divisor}"
        )
    lines.append(f"combined divisor: {certificate.combined_divisor}")
    lines.append(f"verdict: {certificate.verdict}")
    return lines


def _pieces_text(pieces: List[SlopePiece]) -> str:
    return ", ".join(f"{piece.slope} (length {piece.length})" for piece in pieces)


def exp_composition_lines(report: ExpCompositionReport) -> List[str]:
    hypotheses = report.hypotheses
    lines = [
        f"g = {report.g}, iterations: {report.iterations}",
        "hypotheses:",
        f"  deg g = {hypotheses.degree} is prime: {'yes' if hypotheses.degree_is_prime else 'no'}",
        f"  deg g exceeds every prime divisor of n={report.n}: "
        f"{'yes' if hypotheses.degree_exceeds_prime_divisors else 'no'}",
    ]
    for item in hypotheses.dumas:
        status = f"p^{item.r}-Dumas" if item.strict_dumas else "not p^r-Dumas"
        steepness = "slopes below r" if item.slopes_within_r else "slopes not below r"
        lines.append(f"  at p={item.p}: {status}, {steepness}")
    lines.append(f"  all hold: {'yes' if hypotheses.hold else 'no'}")
    lines.extend(certificate_lines(report.certificate))
    for check in report.slope_checks:
        lines.append(
            f"p={check.p}: predicted {_pieces_text(check.predicted)}; "
            f"{'matches' if check.matches else 'actual ' + _pieces_text(check.actual)}"
        )
    if report.divisor_degraded:
        lines.append("warning: hypotheses hold but the forced divisor degraded below d^m * p^ord_p(n)")
    return lines


def dynamical_lines(report: DynamicalReport) -> List[str]:
    lines = [f"g = {report.g}", f"prime: {report.prime}, r={report.r}, d={report.degree}"]
    for step in report.steps:
        mark = "certified" if step.certified else "NOT certified"
        lines.append(f"m={step.m}: degree {step.degree}, slope {step.slope} (expected {step.expected_slope}) {mark}")
    lines.append(report.guarantee)
    return lines


def exp_taylor_lines(report: ExpTaylorReport) -> List[str]:
    return [
        f"f_{report.n} = {report.polynomial}",
        f"prime: {report.prime}",
        f"predicted slopes: {_pieces_text(report.predicted)}",
        f"computed slopes: {_pieces_text(report.computed)}",
        f"formula matches: {'yes' if report.matches else 'no'}",
    ]


def verification_lines(summary: VerificationSummary) -> List[str]:
    lines = [
        f"theorem: {summary.theorem}",
        f"seed: {summary.seed}",
        f"trials: {summary.trials}",
        f"passed: {summary.passed}",
        f"failed: {summary.failed}",
    ]
    if summary.counterexample is not None:
        counterexample = summary.counterexample
        lines.append(f"first counterexample: seed {counterexample.seed}, trial {counterexample.trial}")
        lines.extend(f"  {name} = {value}" for name, value in counterexample.inputs.items())
        lines.append(f"  {counterexample.detail}")
    return lines
