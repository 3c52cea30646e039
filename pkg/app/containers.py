from dependency_injector import containers, providers

from app.newton.application.irreducibility_service import IrreducibilityService
from app.newton.application.polygon_service import PolygonService
from app.newton.application.verification_service import VerificationService
from app.newton.infra.render.ascii_plot_renderer import AsciiPlotRenderer
from app.newton.infra.render.svg_plot_renderer import SvgPlotRenderer


class Container(containers.DeclarativeContainer):
    """Dependency Injection 컨테이너"""

    # 설정 (degree_cap, jobs)
    config = providers.Configuration()

    # 렌더러
    ascii_renderer = providers.Singleton(AsciiPlotRenderer)
    svg_renderer = providers.Singleton(SvgPlotRenderer)

    # 뉴턴 다각형 서비스
    polygon_service = providers.Factory(
        PolygonService,
        degree_cap=config.degree_cap,
    )

    # 기약성 인증 서비스
    irreducibility_service = providers.Factory(
        IrreducibilityService,
        degree_cap=config.degree_cap,
    )

    # 무작위 검증 서비스
    verification_service = providers.Factory(
        VerificationService,
        jobs=config.jobs,
    )
