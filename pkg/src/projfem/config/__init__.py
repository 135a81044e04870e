"""Configuration module for projfem."""

from .run_config import (
    DEFAULT_K_LADDER,
    ProblemKind,
    ReportFormat,
    RunConfig,
    load_config_file,
    resolve_run_config,
)
from .settings import AppSettings

__all__ = [
    "DEFAULT_K_LADDER",
    "AppSettings",
    "ProblemKind",
    "ReportFormat",
    "RunConfig",
    "load_config_file",
    "resolve_run_config",
]
