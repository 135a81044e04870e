"""Machinery shared by the segregated projection schemes."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
import time
from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import ClassVar, Iterator

import numpy as np
import scipy.sparse as sp

from projfem.assemble.convection import ConvectionOperator
from projfem.assemble.dirichlet import apply_dirichlet
from projfem.assemble.forcing import VectorFunction, forcing_vector
from projfem.assemble.operators import OperatorSet
from projfem.errors import AssemblyError, ConfigError, SolverError
from projfem.fem.space import Field
from projfem.mesh.trimesh import FloatArray
from projfem.schemes.projection import l2_project_div
from projfem.schemes.state import (
    SchemeConfig,
    SchemeName,
    SchemeState,
    StepDiagnostics,
    StepResult,
    Timings,
)
from projfem.sparse.csr import CsrMatrix
from projfem.sparse.krylov import (
    JacobiPreconditioner,
    MeanZero,
    SolveReport,
    bicgstab_solve,
    cg_solve,
)

logger = logging.getLogger(__name__)

# |1^T b| / ||b||_1 above this means the Neumann rhs is not orthogonal to
# constants, which only an assembly bug can cause.
_COMPATIBILITY_TOL = 1e-9


class ProjectionScheme(ABC):
    """
    A first-order segregated time integrator over a fixed OperatorSet.

    Subclasses implement :meth:`step`; the base class provides the velocity
    operator (1/k) M_v + N(w) + nu K_v, Dirichlet-eliminated component solves,
    the pure-Neumann pressure solve and the timing bookkeeping.
    """

    name: ClassVar[SchemeName]

    def __init__(self, ops: OperatorSet, config: SchemeConfig, forcing: VectorFunction) -> None:
        self.ops = ops
        self.config = config
        self.forcing = forcing
        self.timings = Timings()
        self.nullspace = MeanZero(ops.mass_p_vector)
        self._convection = ConvectionOperator(ops.velocity_space, ops.velocity_pattern)
        self._mass_p_preconditioner = JacobiPreconditioner(ops.mass_p)

    @property
    def k(self) -> float:
        return self.config.k

    @property
    def nu(self) -> float:
        return self.config.nu

    @contextmanager
    def _timed(self, bucket: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            setattr(self.timings, bucket, getattr(self.timings, bucket) + elapsed)

    @abstractmethod
    def step(self, state: SchemeState) -> StepResult:
        """Advance the state from t_m to t_{m+1}."""

    def auxiliary_initial_step(self, state: SchemeState) -> StepResult:
        """
        First step from (u^0, p^0). p^{-1} does not exist, so it is taken
        as p^0 and the extrapolation reduces to grad p^0; afterwards
        2 p^1 - p^0 is available.

        Raises:
            ConfigError: If the state is not at m = 0.
        """
        if state.m != 0:
            raise ConfigError(f"Auxiliary initial step applies at m=0, got m={state.m}")
        start = SchemeState(
            u1=state.u1, u2=state.u2, p_prev=state.p_curr, p_curr=state.p_curr, m=0, t=state.t
        )
        return self.step(start)

    def run(self, state: SchemeState, n_steps: int) -> Iterator[StepResult]:
        """Yield the results of ``n_steps`` steps, starting with the auxiliary one."""
        for _ in range(n_steps):
            result = self.auxiliary_initial_step(state) if state.m == 0 else self.step(state)
            state = result.state
            yield result

    # -- velocity ---------------------------------------------------------

    def velocity_operator(self, w1: Field, w2: Field) -> CsrMatrix:
        """(1/k) M_v + N(w) + nu K_v, before boundary conditions."""
        ops = self.ops
        with self._timed("assembly"):
            matrix = ops.mass_v / self.k + self.nu * ops.stiff_v
            if self.config.convection:
                matrix = matrix + self._convection.assemble(w1, w2)
        return sp.csr_matrix(matrix)

    def loads(self, t: float) -> tuple[FloatArray, FloatArray]:
        with self._timed("assembly"):
            return forcing_vector(self.ops.velocity_space, self.forcing, t)

    def solve_components(
        self,
        matrix: CsrMatrix,
        rhs: tuple[FloatArray, FloatArray],
        guesses: tuple[FloatArray, FloatArray],
    ) -> tuple[Field, Field, int]:
        """
        Solve the same Dirichlet-eliminated operator for both components.

        The Jacobi preconditioner is built once; the two solves run concurrently.
        """
        boundary = self.ops.velocity_space.boundary_dofs
        with self._timed("assembly"):
            eliminated, b1 = apply_dirichlet(matrix, rhs[0], boundary)
            b2 = np.array(rhs[1], dtype=np.float64)
            b2[boundary] = 0.0
            preconditioner = JacobiPreconditioner(eliminated)

        def solve(b: FloatArray, guess: FloatArray) -> tuple[FloatArray, SolveReport]:
            return bicgstab_solve(
                eliminated,
                b,
                tol=self.config.velocity_tol,
                max_iter=self.config.max_iter,
                preconditioner=preconditioner,
                x0=guess,
            )

        fields = []
        iterations = 0
        with self._timed("solve"):
            with ThreadPoolExecutor(max_workers=2) as pool:
                solved = list(pool.map(solve, (b1, b2), guesses))
            for x, report in solved:
                self._require(report, "velocity")
                x[boundary] = 0.0
                iterations += report.iterations
                fields.append(Field(self.ops.velocity_space, x))
        self.timings.velocity_iterations += iterations
        return fields[0], fields[1], iterations

    # -- pressure ---------------------------------------------------------

    def solve_neumann(self, matrix: CsrMatrix, rhs: FloatArray) -> tuple[FloatArray, SolveReport]:
        """
        Solve a pure-Neumann pressure problem for a mean-zero correction.

        Raises:
            AssemblyError: If the rhs is not orthogonal to the constants.
            SolverError: If CG does not converge.
        """
        total = float(np.sum(rhs))
        scale = float(np.sum(np.abs(rhs)))
        if scale > 0.0 and abs(total) > _COMPATIBILITY_TOL * scale:
            raise AssemblyError(
                f"Neumann compatibility violated: 1^T rhs = {total:.3e} (|rhs|_1 = {scale:.3e})"
            )
        with self._timed("solve"):
            x, report = cg_solve(
                matrix,
                rhs,
                tol=self.config.pressure_tol,
                max_iter=self.config.max_iter,
                nullspace=self.nullspace,
            )
        self._require(report, "pressure")
        self.timings.pressure_iterations += report.iterations
        return x, report

    def project_divergence(self, u1: Field, u2: Field) -> Field:
        """Pi_h(div u) with the cached mass preconditioner."""
        with self._timed("solve"):
            result, report = l2_project_div(
                u1,
                u2,
                self.ops,
                tol=self.config.pressure_tol,
                preconditioner=self._mass_p_preconditioner,
            )
        self.timings.pressure_iterations += report.iterations
        return result

    def mean_zero(self, values: FloatArray) -> Field:
        return Field(self.ops.pressure_space, self.nullspace.project(values))

    # -- diagnostics ------------------------------------------------------

    def kinetic_energy(self, u1: Field, u2: Field) -> float:
        mass = self.ops.mass_v
        return float(u1.values @ (mass @ u1.values) + u2.values @ (mass @ u2.values))

    def pressure_energy(self, p: Field) -> float:
        return float(self.k**2 * (p.values @ (self.ops.stiff_p @ p.values)))

    def initial_diagnostics(self, state: SchemeState) -> StepDiagnostics:
        return StepDiagnostics(
            m=state.m,
            t=state.t,
            kinetic_energy=self.kinetic_energy(state.u1, state.u2),
            pressure_energy=self.pressure_energy(state.p_curr),
        )

    def _require(self, report: SolveReport, what: str) -> None:
        if not report.converged:
            logger.warning("%s %s solve failed: %s", self.name.value, what, report)
            raise SolverError(f"{self.name.value} {what} solve did not converge", report)
