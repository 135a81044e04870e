"""Application-level settings for the projfem CLI."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LogLevel = Literal["error", "warning", "info", "debug"]


class AppSettings(BaseSettings):
    """Settings exposed to the dependency container."""

    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)

    app_name: str = Field(
        default="projfem",
        alias="PROJFEM_APP_NAME",
        description="Public-facing application name reported in outputs and logs.",
    )
    log_level: LogLevel = Field(
        default="info",
        alias="PROJFEM_LOG",
        description="Verbosity of the projfem logger.",
    )
    default_output_dir: str = Field(
        default="projfem_output",
        alias="PROJFEM_OUTPUT_DIR",
        description="Default directory for CSV reports and VTK series.",
    )
    default_workers: int = Field(
        default=1,
        ge=1,
        alias="PROJFEM_WORKERS",
        description="Default number of concurrent runs in a convergence sweep.",
    )
