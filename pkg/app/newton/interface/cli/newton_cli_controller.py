import argparse
import json
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from dependency_injector.wiring import Provide, inject
from pydantic import BaseModel
from sympy import primefactors

from app.config.cli_config import CliConfig
from app.containers import Container
from app.newton.application.irreducibility_service import IrreducibilityService
from app.newton.application.polygon_service import PolygonService
from app.newton.application.property_trials import THEOREMS
from app.newton.application.schemas import CertificateSchema, polygon_to_json, region_to_json, versioned
from app.newton.application.verification_service import VerificationService
from app.newton.domain.errors import EmptyInput
from app.newton.domain.exact_number import parse_rational
from app.newton.domain.exp_taylor import taylor_exp
from app.newton.domain.newton_polygon import LowerBoundRegion
from app.newton.domain.plot_spec import LayerStyle, PlotLayer, PlotSpec
from app.newton.domain.repository.plot_renderer_repo import IPlotRenderer
from app.newton.interface.cli import text_views

logger = logging.getLogger(__name__)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _integer_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except Exception:
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _print_lines(lines: Iterable[str]) -> None:
    for line in lines:
        print(line)


def _print_json(payload: BaseModel) -> None:
    print(json.dumps(versioned(payload), indent=2))


def _emit_figure(
    config: CliConfig,
    layers: Sequence[PlotLayer],
    ascii_renderer: IPlotRenderer,
    svg_renderer: IPlotRenderer,
) -> None:
    """--ascii 는 stdout 으로, --svg PATH 는 파일로 그림을 씁니다."""
    spec = PlotSpec(layers=tuple(layers))
    if config.output == "svg":
        document = svg_renderer.render(spec)
        with open(config.svg_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(document)
        logger.info(f"SVG 저장 완료: {config.svg_path}")
    else:
        print(ascii_renderer.render(spec), end="")


@inject
def handle_np(
    args: argparse.Namespace,
    config: CliConfig,
    polygon_service: PolygonService = Provide[Container.polygon_service],
    ascii_renderer: IPlotRenderer = Provide[Container.ascii_renderer],
    svg_renderer: IPlotRenderer = Provide[Container.svg_renderer],
) -> int:
    """
    다항식의 뉴턴 다각형, 순수성, 근 값매김을 출력합니다.

    Args:
        args: --poly, --prime
        config: 출력 형식과 차수 상한

    Returns:
        int: 종료 코드 (0)
    """
    f = polygon_service.parse(args.poly, args.prime)
    report = polygon_service.describe(f, args.prime)
    if config.output == "json":
        _print_json(report)
    elif config.output in ("svg", "ascii"):
        layer = PlotLayer(report.polygon.to_polygon(), LayerStyle.SOLID, f"NP_{args.prime}({report.polynomial})")
        _emit_figure(config, [layer], ascii_renderer, svg_renderer)
    else:
        _print_lines(text_views.polygon_report_lines(report))
    return 0


@inject
def handle_compose(
    args: argparse.Namespace,
    config: CliConfig,
    polygon_service: PolygonService = Provide[Container.polygon_service],
    ascii_renderer: IPlotRenderer = Provide[Container.ascii_renderer],
    svg_renderer: IPlotRenderer = Provide[Container.svg_renderer],
) -> int:
    """f∘g^∘m 의 실제 다각형과 신장 예측을 나란히 출력합니다."""
    f = polygon_service.parse(args.f, args.prime)
    if args.auto_partner:
        if args.g is not None or args.iterate is not None:
            raise argparse.ArgumentTypeError("--auto-partner chooses g itself; drop --g and --iterate")
        report = polygon_service.compose_with_partner(f, args.prime, args.epsilon)
    else:
        if args.g is None:
            raise argparse.ArgumentTypeError("compose requires --g unless --auto-partner is given")
        g = polygon_service.parse(args.g, args.prime)
        iterations = 1 if args.iterate is None else args.iterate
        report = polygon_service.verify_composition(f, g, args.prime, iterations)

    if config.output == "json":
        _print_json(report)
    elif config.output in ("svg", "ascii"):
        layers = [
            PlotLayer(polygon_service.polygon(f, args.prime), LayerStyle.BOLD, "NP(f)"),
            PlotLayer(report.actual.to_polygon(), LayerStyle.SOLID, "NP(f o g)"),
        ]
        if report.predicted is not None:
            layers.append(PlotLayer(report.predicted.to_polygon(), LayerStyle.DASHED, "predicted"))
        else:
            layers.append(PlotLayer(report.naive_stretch.to_polygon(), LayerStyle.DASHED, "naive stretch"))
        _emit_figure(config, layers, ascii_renderer, svg_renderer)
    else:
        _print_lines(text_views.composition_lines(report))
    return 0


@inject
def handle_check(
    args: argparse.Namespace,
    config: CliConfig,
    polygon_service: PolygonService = Provide[Container.polygon_service],
    irreducibility_service: IrreducibilityService = Provide[Container.irreducibility_service],
    ascii_renderer: IPlotRenderer = Provide[Container.ascii_renderer],
    svg_renderer: IPlotRenderer = Provide[Container.svg_renderer],
) -> int:
    """순수성 분류와 Eisenstein–Dumas 인증서를 출력합니다."""
    f = polygon_service.parse(args.poly, args.prime)
    report = irreducibility_service.check(f, args.prime)
    if config.output == "json":
        _print_json(report)
    elif config.output in ("svg", "ascii"):
        polygon = polygon_service.polygon(f, args.prime)
        _emit_figure(config, [PlotLayer(polygon, LayerStyle.SOLID, report.purity.description)], ascii_renderer, svg_renderer)
    else:
        _print_lines(text_views.check_lines(report))
    return 0


def _substitution_prime(primes: Optional[List[int]]) -> Optional[int]:
    return primes[0] if primes is not None and len(primes) == 1 else None


@inject
def handle_certify(
    args: argparse.Namespace,
    config: CliConfig,
    polygon_service: PolygonService = Provide[Container.polygon_service],
    irreducibility_service: IrreducibilityService = Provide[Container.irreducibility_service],
) -> int:
    """
    기약성 인증서를 출력합니다. CertifiedIrreducible 이면 0, 아니면 1을 돌려줍니다.

    --exp-n N 은 f_N 을, --poly 는 주어진 다항식을 대상으로 하며
    --compose G --iterate M 으로 합성 대상을, --dynamical 로 반복 합성 확인을 고릅니다.
    """
    primes = args.primes
    symbol_prime = _substitution_prime(primes)
    g = polygon_service.parse(args.compose, symbol_prime) if args.compose is not None else None

    if args.dynamical:
        if args.poly is None or symbol_prime is None:
            raise argparse.ArgumentTypeError("--dynamical requires --poly and exactly one prime in --primes")
        target = polygon_service.parse(args.poly, symbol_prime)
        report = irreducibility_service.certify_dynamical(target, symbol_prime, args.iterate)
        if config.output == "json":
            _print_json(report)
        else:
            _print_lines(text_views.dynamical_lines(report))
        return 0 if report.verified_up_to == len(report.steps) else 1

    if args.exp_n is not None and g is not None:
        report = irreducibility_service.certify_exp_composition(args.exp_n, g, args.iterate, primes)
        if config.output == "json":
            _print_json(report)
        else:
            _print_lines(text_views.exp_composition_lines(report))
        return 0 if report.certificate.verdict == "certified_irreducible" else 1

    if args.exp_n is not None:
        f = taylor_exp(args.exp_n)
        chosen = primes if primes is not None else primefactors(args.exp_n)
        certificate = irreducibility_service.certify(f, chosen, f"f_{args.exp_n}")
    else:
        f = polygon_service.parse(args.poly, symbol_prime)
        if primes is None:
            raise EmptyInput("--primes is required with --poly")
        if g is not None:
            certificate = irreducibility_service.certify_composition(f, g, args.iterate, primes)
        else:
            certificate = irreducibility_service.certify(f, primes)

    schema = CertificateSchema.of(certificate)
    if config.output == "json":
        _print_json(schema)
    else:
        _print_lines(text_views.certificate_lines(schema))
    return 0 if certificate.is_certified else 1


@inject
def handle_exp_taylor(
    args: argparse.Namespace,
    config: CliConfig,
    irreducibility_service: IrreducibilityService = Provide[Container.irreducibility_service],
    ascii_renderer: IPlotRenderer = Provide[Container.ascii_renderer],
    svg_renderer: IPlotRenderer = Provide[Container.svg_renderer],
) -> int:
    """f_n 과 그 NP_p 기울기(자릿수 공식, 직접 계산)를 출력합니다."""
    report = irreducibility_service.exp_taylor(args.n, args.prime)
    if config.output == "json":
        _print_json(report)
    elif config.output in ("svg", "ascii"):
        layer = PlotLayer(report.polygon.to_polygon(), LayerStyle.SOLID, f"NP_{args.prime}(f_{args.n})")
        _emit_figure(config, [layer], ascii_renderer, svg_renderer)
    else:
        _print_lines(text_views.exp_taylor_lines(report))
    return 0


@inject
def handle_verify(
    args: argparse.Namespace,
    config: CliConfig,
    verification_service: VerificationService = Provide[Container.verification_service],
) -> int:
    """무작위 검증을 실행합니다. 모든 시행이 통과하면 0."""
    summary = verification_service.run(args.theorem, args.trials, config.seed, args.max_degree)
    if config.output == "json":
        _print_json(summary)
    else:
        _print_lines(text_views.verification_lines(summary))
    return 0 if summary.all_passed else 1


class RenderedLayers(BaseModel):
    polygons: List[dict]
    union: Optional[dict] = None


@inject
def handle_render(
    args: argparse.Namespace,
    config: CliConfig,
    polygon_service: PolygonService = Provide[Container.polygon_service],
    ascii_renderer: IPlotRenderer = Provide[Container.ascii_renderer],
    svg_renderer: IPlotRenderer = Provide[Container.svg_renderer],
) -> int:
    """
    여러 다항식의 다각형을 겹쳐 그립니다. --style/--label 은 --poly 순서대로 대응합니다.
    --union 은 모든 꼭짓점 합집합의 하부 볼록 껍질을 굵은 선으로 덧그립니다.
    """
    styles = args.style or []
    labels = args.label or []
    polynomials = [polygon_service.parse(text, args.prime) for text in args.poly]
    polygons = [polygon_service.polygon(f, args.prime) for f in polynomials]
    layers = [
        PlotLayer(
            polygon,
            LayerStyle(styles[index]) if index < len(styles) else LayerStyle.SOLID,
            labels[index] if index < len(labels) else args.poly[index],
        )
        for index, polygon in enumerate(polygons)
    ]
    region: Optional[LowerBoundRegion] = None
    if args.union:
        region = polygon_service.union_region(polynomials, args.prime)
        layers.append(PlotLayer(region, LayerStyle.BOLD, "union lower hull"))

    if config.output == "json":
        _print_json(
            RenderedLayers(
                polygons=[polygon_to_json(polygon) for polygon in polygons],
                union=region_to_json(region) if region is not None else None,
            )
        )
        return 0
    spec = PlotSpec(
        layers=tuple(layers),
        x_ticks=tuple(args.x_ticks or ()),
        y_ticks=tuple(args.y_ticks or ()),
        width=args.width,
        height=args.height,
    )
    if config.output == "svg":
        with open(config.svg_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(svg_renderer.render(spec))
    else:
        print(ascii_renderer.render(spec), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    """하위 명령별 파서. 공통 플래그는 하위 명령 뒤에 둡니다 (예: ``verify --seed 42``)."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonnegative_int, default=None, help="RNG seed (64-bit unsigned)")
    common.add_argument("--cap", type=_positive_int, default=None, help="maximum degree of computed polynomials")
    common.add_argument("--jobs", type=_positive_int, default=None, help="parallel worker processes")

    json_only = argparse.ArgumentParser(add_help=False)
    json_only.add_argument("--json", action="store_true", help="emit JSON")

    figures = argparse.ArgumentParser(add_help=False)
    output = figures.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="emit JSON")
    output.add_argument("--svg", metavar="PATH", default=None, help="write an SVG figure to PATH")
    output.add_argument("--ascii", action="store_true", help="print an ASCII figure")

    parser = argparse.ArgumentParser(prog="padic-newton", description="p-adic Newton polygons and irreducibility certificates")
    commands = parser.add_subparsers(dest="command", required=True)

    np_parser = commands.add_parser("np", parents=[common, figures], help="Newton polygon of a polynomial")
    np_parser.add_argument("--poly", required=True)
    np_parser.add_argument("--prime", type=int, required=True)
    np_parser.set_defaults(handler=handle_np)

    compose_parser = commands.add_parser("compose", parents=[common, figures], help="stretch prediction for f o g^m")
    compose_parser.add_argument("--f", required=True)
    compose_parser.add_argument("--g", default=None)
    compose_parser.add_argument("--iterate", type=_nonnegative_int, default=None)
    compose_parser.add_argument("--prime", type=int, required=True)
    compose_parser.add_argument("--auto-partner", action="store_true", help="choose g = x^d + p^r automatically")
    compose_parser.add_argument("--epsilon", type=_rational, default=Fraction(1))
    compose_parser.set_defaults(handler=handle_compose)

    check_parser = commands.add_parser("check", parents=[common, figures], help="purity and Dumas certificate")
    check_parser.add_argument("--poly", required=True)
    check_parser.add_argument("--prime", type=int, required=True)
    check_parser.set_defaults(handler=handle_check)

    certify_parser = commands.add_parser("certify", parents=[common, json_only], help="irreducibility certificate")
    target = certify_parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--poly", default=None)
    target.add_argument("--exp-n", type=_positive_int, default=None)
    certify_parser.add_argument("--compose", default=None)
    certify_parser.add_argument("--iterate", type=_nonnegative_int, default=1)
    certify_parser.add_argument("--primes", type=_integer_list, default=None, help="comma-separated primes")
    certify_parser.add_argument("--dynamical", action="store_true", help="certify every iterate of --poly")
    certify_parser.set_defaults(handler=handle_certify)

    exp_parser = commands.add_parser("exp-taylor", parents=[common, figures], help="Taylor polynomial of exp")
    exp_parser.add_argument("--n", type=_positive_int, required=True)
    exp_parser.add_argument("--prime", type=int, required=True)
    exp_parser.set_defaults(handler=handle_exp_taylor)

    verify_parser = commands.add_parser("verify", parents=[common, json_only], help="randomized theorem checks")
    verify_parser.add_argument("--theorem", choices=THEOREMS, required=True)
    verify_parser.add_argument("--trials", type=_positive_int, default=100)
    verify_parser.add_argument("--max-degree", type=_positive_int, default=None)
    verify_parser.set_defaults(handler=handle_verify)

    render_parser = commands.add_parser("render", parents=[common, figures], help="draw one or more polygons")
    render_parser.add_argument("--poly", action="append", required=True)
    render_parser.add_argument("--prime", type=int, required=True)
    render_parser.add_argument("--style", action="append", choices=[style.value for style in LayerStyle])
    render_parser.add_argument("--label", action="append")
    render_parser.add_argument("--union", action="store_true")
    render_parser.add_argument("--x-ticks", type=_integer_list, default=None)
    render_parser.add_argument("--y-ticks", type=_integer_list, default=None)
    render_parser.add_argument("--width", type=_positive_int, default=480)
    render_parser.add_argument("--height", type=_positive_int, default=360)
    render_parser.set_defaults(handler=handle_render)

    return parser
