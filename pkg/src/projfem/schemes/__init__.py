"""Time integrators: incremental projection and its three competitors."""

from __future__ import annotations

from projfem.assemble.forcing import VectorFunction
from projfem.assemble.operators import OperatorSet
from projfem.errors import ConfigError

from .base import ProjectionScheme
from .consistent import ConsistentScheme
from .incremental import IncrementalScheme
from .initial import manufactured_initial_state, random_initial_state
from .penalty import PenaltyScheme
from .projection import l2_project_div
from .rotational import RotationalScheme
from .state import (
    ElementPair,
    SchemeConfig,
    SchemeName,
    SchemeState,
    StepDiagnostics,
    StepResult,
    Timings,
    steps_for,
)

SCHEMES: dict[SchemeName, type[ProjectionScheme]] = {
    SchemeName.INCREMENTAL: IncrementalScheme,
    SchemeName.ROTATIONAL: RotationalScheme,
    SchemeName.CONSISTENT: ConsistentScheme,
    SchemeName.PENALTY: PenaltyScheme,
}


def create_scheme(ops: OperatorSet, config: SchemeConfig, forcing: VectorFunction) -> ProjectionScheme:
    """Instantiate the integrator named by ``config.scheme``."""
    try:
        cls = SCHEMES[SchemeName(config.scheme)]
    except (KeyError, ValueError) as e:
        raise ConfigError(f"unknown scheme: {config.scheme}") from e
    return cls(ops, config, forcing)


__all__ = [
    "SCHEMES",
    "ConsistentScheme",
    "ElementPair",
    "IncrementalScheme",
    "PenaltyScheme",
    "ProjectionScheme",
    "RotationalScheme",
    "SchemeConfig",
    "SchemeName",
    "SchemeState",
    "StepDiagnostics",
    "StepResult",
    "Timings",
    "create_scheme",
    "l2_project_div",
    "manufactured_initial_state",
    "random_initial_state",
    "steps_for",
]
