from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from app.config.settings import settings

OutputFormat = Literal["text", "json", "svg", "ascii"]


class CliConfig(BaseModel):
    """
    호출 단위 CLI 설정. 플래그가 없으면 환경 설정(settings) 값을 씁니다.
    """
    degree_cap: int = Field(default_factory=lambda: settings.PADIC_NEWTON_CAP, ge=1)
    seed: int = Field(default_factory=lambda: settings.PADIC_NEWTON_SEED, ge=0, lt=2**64)
    jobs: int = Field(default_factory=lambda: settings.PADIC_NEWTON_JOBS, ge=1)
    output: OutputFormat = "text"
    svg_path: Optional[Path] = None

    @model_validator(mode="after")
    def _svg_needs_path(self) -> "CliConfig":
        if (self.output == "svg") != (self.svg_path is not None):
            raise ValueError("svg output requires exactly one output path")
        return self

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        """argparse 결과에서 설정을 만듭니다. 지정하지 않은 값은 기본값을 유지합니다."""
        values = {}
        if getattr(args, "cap", None) is not None:
            values["degree_cap"] = args.cap
        if getattr(args, "seed", None) is not None:
            values["seed"] = args.seed
        if getattr(args, "jobs", None) is not None:
            values["jobs"] = args.jobs
        if getattr(args, "svg", None) is not None:
            values["output"] = "svg"
            values["svg_path"] = Path(args.svg)
        elif getattr(args, "ascii", False):
            values["output"] = "ascii"
        elif getattr(args, "json", False):
            values["output"] = "json"
        return cls(**values)
