"""Protocol definitions for time integrators and the simulation runner."""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Iterator, Protocol, Sequence

from projfem.schemes.state import SchemeName, SchemeState, StepDiagnostics, StepResult, Timings
from projfem.verify.orders import ConvergenceReport

if TYPE_CHECKING:
    from projfem.config.run_config import RunConfig
    from projfem.services.simulator import RunResult


class SchemeProtocol(Protocol):
    """A first-order time integrator advancing a SchemeState."""

    name: SchemeName
    timings: Timings

    def step(self, state: SchemeState) -> StepResult:
        """
        Advance the state by one time step.

        Raises:
            SolverError: If a linear solve fails to converge.
        """
        ...

    def auxiliary_initial_step(self, state: SchemeState) -> StepResult:
        """First step, with p^{-1} taken as p^0."""
        ...

    def run(self, state: SchemeState, n_steps: int) -> Iterator[StepResult]:
        ...

    def initial_diagnostics(self, state: SchemeState) -> StepDiagnostics:
        ...


class SimulatorProtocol(Protocol):
    """Runs one configured time integration to completion."""

    def run(
        self,
        config: RunConfig,
        on_state: Callable[[SchemeState], None] | None = None,
    ) -> RunResult:
        """
        Execute the run described by ``config``.

        Args:
            config: Validated run configuration.
            on_state: Called with the initial state and after every step.

        Returns:
            Error series (manufactured problem), diagnostics and timings.
        """
        ...

    def convergence(
        self, config: RunConfig, ks: Sequence[float], workers: int = 1
    ) -> tuple[ConvergenceReport, list[RunResult]]:
        """One manufactured run per k, and the orders between them."""
        ...

    def compare(self, config: RunConfig, workers: int = 1) -> list[RunResult]:
        """The configured run for every scheme in ``config.schemes``."""
        ...
