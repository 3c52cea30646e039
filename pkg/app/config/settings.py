from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """애플리케이션 설정"""

    # 기본 설정
    PROJECT_NAME: str = "padic-newton"
    VERSION: str = "1.0.0"
    DESCRIPTION: str = "p진 뉴턴 다각형 계산 및 기약성 인증서 발급 CLI"

    # 환경 설정
    ENVIRONMENT: str = "dev"  # dev 또는 prod
    LOG_LEVEL: str = "WARNING"
    LOG_DIR: str = "logs"

    # 계산 설정 (CLI 플래그가 호출 단위로 덮어씀)
    PADIC_NEWTON_CAP: int = Field(default=100_000, ge=1)
    PADIC_NEWTON_SEED: int = Field(default=0, ge=0, lt=2**64)
    PADIC_NEWTON_JOBS: int = Field(default=1, ge=1)

    @property
    def is_production(self) -> bool:
        """프로덕션 환경인지 확인"""
        return self.ENVIRONMENT == "prod"

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


# 전역 설정 인스턴스
settings = Settings()
