import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from app.config.cli_config import CliConfig
from app.config.logging_config import setup_logging
from app.config.settings import settings
from app.containers import Container
from app.newton.domain.errors import NewtonPolygonError, ParseError
from app.newton.interface.cli import newton_cli_controller

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_DOMAIN = 3


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI 진입점

    Args:
        argv: 명령행 인자 (생략 시 sys.argv[1:])

    Returns:
        int: 종료 코드 (0 성공, 1 판정 실패, 2 입력/플래그 오류, 3 도메인 오류)
    """
    # 로깅 설정 초기화
    setup_logging()

    # Dependency Injection 컨테이너 설정
    container = Container()
    container.wire(modules=[newton_cli_controller])
    try:
        parser = newton_cli_controller.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        try:
            config = CliConfig.from_args(args)
        except ValidationError as e:
            print(f"error: invalid options: {e.errors()[0]['msg']}", file=sys.stderr)
            return EXIT_USAGE
        container.config.from_dict({"degree_cap": config.degree_cap, "jobs": config.jobs})
        logger.info(f"{settings.PROJECT_NAME} {settings.VERSION}: {args.command}")

        try:
            return args.handler(args, config)
        except ParseError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except NewtonPolygonError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_DOMAIN
        except (argparse.ArgumentTypeError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as e:
            print(f"error: cannot write output: {e}", file=sys.stderr)
            return EXIT_DOMAIN
    finally:
        container.unwire()


if __name__ == "__main__":
    sys.exit(main())
