"""Per-step unknowns and configuration shared by all projection schemes."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from projfem.errors import ConfigError
from projfem.fem.basis import ElementKind
from projfem.fem.space import Field
from projfem.mesh.trimesh import Diagonal, FloatArray


class SchemeName(str, Enum):
    INCREMENTAL = "incremental"
    ROTATIONAL = "rotational"
    CONSISTENT = "consistent"
    PENALTY = "penalty"


class ElementPair(str, Enum):
    """Inf-sup stable velocity/pressure pairs."""

    TAYLOR_HOOD = "th"
    MINI = "mini"

    @property
    def velocity_kind(self) -> ElementKind:
        return ElementKind.P2 if self is ElementPair.TAYLOR_HOOD else ElementKind.P1_BUBBLE

    @property
    def pressure_kind(self) -> ElementKind:
        return ElementKind.P1

    @property
    def label(self) -> str:
        return "P2xP1" if self is ElementPair.TAYLOR_HOOD else "P1bxP1"


def steps_for(T: float, k: float) -> int:
    """Number of uniform steps M = T / k, rejecting non-divisible pairs."""
    ratio = T / k
    steps = round(ratio)
    if steps < 1 or not math.isclose(ratio, steps, rel_tol=1e-9, abs_tol=1e-9):
        raise ConfigError(f"Time step k={k} does not divide T={T} evenly ({ratio:.2f} steps)")
    return int(steps)


@dataclass(frozen=True)
class SchemeConfig:
    """Physical and numerical parameters of one time integration."""

    scheme: SchemeName = SchemeName.INCREMENTAL
    nu: float = 1.0
    k: float = 0.1
    T: float = 2.0
    n: int = 16
    pair: ElementPair = ElementPair.TAYLOR_HOOD
    diagonal: Diagonal = Diagonal.RIGHT
    velocity_tol: float = 1e-10
    pressure_tol: float = 1e-11
    max_iter: int | None = None
    convection: bool = True

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "scheme", SchemeName(self.scheme))
        except ValueError as e:
            raise ConfigError(f"unknown scheme: {self.scheme}") from e
        try:
            object.__setattr__(self, "pair", ElementPair(self.pair))
        except ValueError as e:
            raise ConfigError(f"unknown element pair: {self.pair}") from e
        try:
            object.__setattr__(self, "diagonal", Diagonal(self.diagonal))
        except ValueError as e:
            raise ConfigError(f"unknown diagonal: {self.diagonal}") from e
        if self.k <= 0.0:
            raise ConfigError(f"Time step must be positive, got k={self.k}")
        if self.T < self.k:
            raise ConfigError(f"Final time T={self.T} must be at least k={self.k}")
        if self.nu <= 0.0:
            raise ConfigError(f"Viscosity must be positive, got nu={self.nu}")
        if self.n < 1:
            raise ConfigError(f"Mesh subdivisions must be positive, got n={self.n}")
        steps_for(self.T, self.k)

    @property
    def n_steps(self) -> int:
        return steps_for(self.T, self.k)

    def with_updates(self, **changes: object) -> SchemeConfig:
        return replace(self, **changes)  # type: ignore[arg-type]


@dataclass
class SchemeState:
    """
    Unknowns carried from t_m to t_{m+1}.

    ``u1``/``u2`` hold the computable velocity: the intermediate velocity
    for the incremental scheme, the end-of-step velocity otherwise.
    """

    u1: Field
    u2: Field
    p_prev: Field
    p_curr: Field
    m: int = 0
    t: float = 0.0

    def pressure_extrapolation(self) -> FloatArray:
        """2 p^m - p^{m-1}; reduces to p^0 on the first step, where p^{-1} := p^0."""
        result: FloatArray = 2.0 * self.p_curr.values - self.p_prev.values
        return result

    def advanced(self, u1: Field, u2: Field, p_next: Field, k: float) -> SchemeState:
        m = self.m + 1
        return SchemeState(u1=u1, u2=u2, p_prev=self.p_curr, p_curr=p_next, m=m, t=m * k)


@dataclass(frozen=True)
class StepDiagnostics:
    """
    Invariant quantities recorded after each step.

    ``kinetic_energy`` is |u^m|^2 (for the incremental scheme the virtual
    end-of-step velocity), ``pressure_energy`` is k^2 p^T K_p p. The two
    residual fields are only filled by the incremental scheme.
    """

    m: int
    t: float
    kinetic_energy: float
    pressure_energy: float
    identity_residual: float | None = None
    orthogonality_residual: float | None = None
    orthogonality_scale: float | None = None
    velocity_iterations: int = 0
    pressure_iterations: int = 0

    @property
    def energy(self) -> float:
        return self.kinetic_energy + self.pressure_energy


@dataclass
class StepResult:
    state: SchemeState
    diagnostics: StepDiagnostics


@dataclass
class Timings:
    """Wall-clock seconds split into assembly and linear solves."""

    assembly: float = 0.0
    solve: float = 0.0
    velocity_iterations: int = 0
    pressure_iterations: int = 0

    @property
    def total(self) -> float:
        return self.assembly + self.solve
