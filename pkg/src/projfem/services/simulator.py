"""Simulation service: build the discretisation, run a scheme, collect errors."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from projfem.assemble.forcing import VectorFunction, zero_forcing
from projfem.assemble.operators import OperatorSet, assemble_operator_set
from projfem.config.run_config import ProblemKind, RunConfig
from projfem.errors import ConfigError
from projfem.fem.space import FeSpace
from projfem.mesh.trimesh import build_structured
from projfem.protocols.scheme_protocol import SchemeProtocol
from projfem.schemes import (
    SchemeConfig,
    SchemeState,
    StepDiagnostics,
    Timings,
    create_scheme,
    manufactured_initial_state,
    random_initial_state,
)
from projfem.verify.exact import ManufacturedSolution
from projfem.verify.norms import ErrorSeries, step_errors
from projfem.verify.orders import ConvergenceReport

logger = logging.getLogger(__name__)

StateCallback = Callable[[SchemeState], None]


@dataclass
class RunResult:
    """Everything one time integration produced."""

    config: SchemeConfig
    problem: ProblemKind
    diagnostics: list[StepDiagnostics] = field(default_factory=list)
    series: ErrorSeries | None = None
    timings: Timings = field(default_factory=Timings)
    runtime_seconds: float = 0.0
    final_state: SchemeState | None = None

    @property
    def norms(self) -> dict[str, float]:
        """Summary error norms; empty for problems without an exact solution."""
        return self.series.summary() if self.series is not None else {}


def build_operators(config: SchemeConfig) -> OperatorSet:
    """Mesh, spaces and the constant operators for one configuration."""
    mesh = build_structured(config.n, config.diagonal)
    vspace = FeSpace(mesh, config.pair.velocity_kind)
    pspace = FeSpace(mesh, config.pair.pressure_kind)
    return assemble_operator_set(vspace, pspace)


class Simulator:
    """Runs configured time integrations."""

    def run(self, config: RunConfig, on_state: StateCallback | None = None) -> RunResult:
        """
        Execute one time integration.

        Args:
            config: Validated run configuration.
            on_state: Called with the initial state and after every step.

        Returns:
            RunResult with diagnostics, timings and (for the manufactured
            problem) the per-step error series.

        Raises:
            SolverError: If a linear solve fails to converge.
        """
        scheme_config = config.to_scheme_config()
        return self.run_scheme(
            scheme_config, config.problem, seed=config.seed, on_state=on_state
        )

    def run_scheme(
        self,
        config: SchemeConfig,
        problem: ProblemKind = ProblemKind.MANUFACTURED,
        seed: int = 0,
        on_state: StateCallback | None = None,
    ) -> RunResult:
        started = time.perf_counter()
        logger.info(
            "run %s %s n=%d k=%g T=%g (%s)",
            config.scheme.value,
            config.pair.label,
            config.n,
            config.k,
            config.T,
            problem.value,
        )

        assembly_start = time.perf_counter()
        ops = build_operators(config)
        setup_seconds = time.perf_counter() - assembly_start

        solution: ManufacturedSolution | None
        forcing: VectorFunction
        if problem is ProblemKind.MANUFACTURED:
            solution = ManufacturedSolution(nu=config.nu)
            forcing = solution.forcing
            state = manufactured_initial_state(ops, solution)
        else:
            solution = None
            forcing = zero_forcing
            state = random_initial_state(ops, seed)

        scheme: SchemeProtocol = create_scheme(ops, config, forcing)
        scheme.timings.assembly += setup_seconds

        result = RunResult(config=config, problem=problem, timings=scheme.timings)
        result.diagnostics.append(scheme.initial_diagnostics(state))
        if solution is not None:
            result.series = ErrorSeries(k=config.k)
            result.series.append(step_errors(state.t, state.u1, state.u2, state.p_curr, solution))
        if on_state is not None:
            on_state(state)

        for step in scheme.run(state, config.n_steps):
            state = step.state
            result.diagnostics.append(step.diagnostics)
            if result.series is not None:
                result.series.append(
                    step_errors(state.t, state.u1, state.u2, state.p_curr, solution)
                )
            if on_state is not None:
                on_state(state)

        result.final_state = state
        result.runtime_seconds = time.perf_counter() - started
        logger.info(
            "done %s k=%g in %.3fs (assembly %.3fs, solve %.3fs)",
            config.scheme.value,
            config.k,
            result.runtime_seconds,
            result.timings.assembly,
            result.timings.solve,
        )
        return result

    def convergence(
        self, config: RunConfig, ks: Sequence[float], workers: int = 1
    ) -> tuple[ConvergenceReport, list[RunResult]]:
        """
        One manufactured run per k, concurrently up to ``workers``.

        Returns:
            The report (orders between consecutive k) and the runs in k order.

        Raises:
            ConfigError: For problems without an exact solution.
        """
        if config.problem is not ProblemKind.MANUFACTURED:
            raise ConfigError("Convergence sweeps need the manufactured problem")
        base = config.to_scheme_config()
        configs = [base.with_updates(k=k) for k in ks]
        started = time.perf_counter()
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(pool.map(self.run_scheme, configs))
        report = ConvergenceReport(scheme=base.scheme.value, pair=base.pair.label, n=base.n)
        for k, result in zip(ks, results):
            report.add(k, result.norms)
        report.runtime_seconds = time.perf_counter() - started
        return report, results

    def compare(self, config: RunConfig, workers: int = 1) -> list[RunResult]:
        """The configured run repeated for every scheme in ``config.schemes``."""
        base = config.to_scheme_config()
        configs = [base.with_updates(scheme=name) for name in config.comparison_schemes()]
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            return list(
                pool.map(lambda c: self.run_scheme(c, config.problem, config.seed), configs)
            )
