"""Run configuration: flat key = value files merged with command-line overrides."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Mapping

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from projfem.errors import ConfigError
from projfem.mesh.trimesh import Diagonal
from projfem.schemes.state import ElementPair, SchemeConfig, SchemeName, steps_for

DEFAULT_K_LADDER: tuple[float, ...] = (0.2, 0.1, 0.05, 0.025)


class ProblemKind(str, Enum):
    MANUFACTURED = "manufactured"
    DECAY = "decay"


class ReportFormat(str, Enum):
    CSV = "csv"
    PRETTY = "pretty"


def _check_scheme_name(value: Any) -> Any:
    if isinstance(value, str) and value not in {s.value for s in SchemeName}:
        raise ValueError(f"unknown scheme: {value}")
    return value


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class RunConfig(BaseModel):
    """
    Everything a run, sweep or comparison needs.

    The scheme fields mirror :class:`SchemeConfig`; the rest is artifact
    plumbing (output directory, VTK export, report format, sweep ladder).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    scheme: SchemeName = SchemeName.INCREMENTAL
    nu: float = Field(default=1.0, gt=0.0)
    k: float = Field(default=0.1, gt=0.0)
    T: float = Field(default=2.0, gt=0.0)
    n: int = Field(default=16, ge=1)
    pair: ElementPair = ElementPair.TAYLOR_HOOD
    diagonal: Diagonal = Diagonal.RIGHT
    velocity_tol: float = Field(default=1e-10, gt=0.0, lt=1.0)
    pressure_tol: float = Field(default=1e-11, gt=0.0, lt=1.0)
    max_iter: int | None = Field(default=None, ge=1)
    convection: bool = True

    problem: ProblemKind = ProblemKind.MANUFACTURED
    seed: int = 0
    out: Path = Path("projfem_output")
    vtk: bool = False
    vtk_every: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)
    format: ReportFormat = ReportFormat.PRETTY
    k_list: list[float] = Field(default_factory=lambda: list(DEFAULT_K_LADDER))
    schemes: list[SchemeName] = Field(default_factory=lambda: list(SchemeName))

    @field_validator("scheme", mode="before")
    @classmethod
    def _known_scheme(cls, value: Any) -> Any:
        return _check_scheme_name(value)

    @field_validator("schemes", mode="before")
    @classmethod
    def _known_schemes(cls, value: Any) -> Any:
        items = _split_list(value)
        for item in items:
            _check_scheme_name(item)
        return items

    @field_validator("k_list", mode="before")
    @classmethod
    def _parse_ladder(cls, value: Any) -> Any:
        return _split_list(value)

    @model_validator(mode="after")
    def _time_grid(self) -> RunConfig:
        if self.T < self.k:
            raise ValueError(f"Final time T={self.T} must be at least k={self.k}")
        try:
            steps_for(self.T, self.k)
        except ConfigError as e:
            raise ValueError(str(e)) from e
        return self

    @property
    def n_steps(self) -> int:
        return steps_for(self.T, self.k)

    def to_scheme_config(self, **changes: Any) -> SchemeConfig:
        """The numerical part of the configuration, optionally with overrides."""
        values = {
            "scheme": self.scheme,
            "nu": self.nu,
            "k": self.k,
            "T": self.T,
            "n": self.n,
            "pair": self.pair,
            "diagonal": self.diagonal,
            "velocity_tol": self.velocity_tol,
            "pressure_tol": self.pressure_tol,
            "max_iter": self.max_iter,
            "convection": self.convection,
        }
        values.update(changes)
        return SchemeConfig(**values)

    def ladder(self) -> list[float]:
        """
        The k_list of a convergence sweep, validated against T.

        Raises:
            ConfigError: If the ladder is not strictly decreasing, has fewer
                than two entries, or some k does not divide T.
        """
        ks = list(self.k_list)
        if len(ks) < 2:
            raise ConfigError(f"A convergence sweep needs at least two time steps, got {ks}")
        if any(b >= a for a, b in zip(ks, ks[1:])):
            raise ConfigError(f"k_list must be strictly decreasing, got {ks}")
        for k in ks:
            steps_for(self.T, k)
        return ks

    def comparison_schemes(self) -> list[SchemeName]:
        if len(self.schemes) < 2:
            raise ConfigError(f"Comparison needs at least two schemes, got {len(self.schemes)}")
        return list(self.schemes)


def load_config_file(path: Path) -> dict[str, str]:
    """
    Read a flat ``key = value`` file.

    Keys are case-insensitive and may use dashes; comments start with ``#``.

    Raises:
        ConfigError: If the file is missing or names an unknown key.
    """
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    raw = dotenv_values(path)
    values: dict[str, str] = {}
    known = set(RunConfig.model_fields)
    for key, value in raw.items():
        name = key.strip().replace("-", "_")
        if name not in known:
            name = name.lower()
        if name not in known:
            raise ConfigError(f"Unknown config key '{key}' in {path}")
        if value is None:
            raise ConfigError(f"Config key '{key}' in {path} has no value")
        values[name] = value
    return values


def _format_validation_error(error: ValidationError) -> str:
    messages = []
    for detail in error.errors():
        ctx_error = detail.get("ctx", {}).get("error")
        message = str(ctx_error) if ctx_error is not None else detail["msg"]
        location = ".".join(str(part) for part in detail["loc"])
        messages.append(f"{location}: {message}" if location else message)
    return "; ".join(messages)


def resolve_run_config(
    config_path: Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    defaults: Mapping[str, Any] | None = None,
) -> RunConfig:
    """
    Merge defaults < config file < overrides into a validated RunConfig.

    ``None`` override values are treated as "not given".

    Raises:
        ConfigError: On unknown keys or invalid values.
    """
    merged: dict[str, Any] = dict(defaults or {})
    if config_path is not None:
        merged.update(load_config_file(config_path))
    merged.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e)) from e
