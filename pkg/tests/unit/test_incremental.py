"""Unit tests for the incremental projection scheme."""

import numpy as np
import pytest

from projfem.assemble import convection_matrix, forcing_vector, zero_forcing
from projfem.errors import ConfigError
from projfem.fem import Field
from projfem.schemes import (
    IncrementalScheme,
    SchemeConfig,
    SchemeState,
    manufactured_initial_state,
    random_initial_state,
)
from projfem.verify.exact import ManufacturedSolution

TIGHT = {"velocity_tol": 1e-12, "pressure_tol": 1e-12}


def _interior_solve(matrix: np.ndarray, rhs: np.ndarray, boundary: np.ndarray) -> np.ndarray:
    interior = np.setdiff1d(np.arange(rhs.shape[0]), boundary)
    x = np.zeros_like(rhs)
    x[interior] = np.linalg.solve(matrix[np.ix_(interior, interior)], rhs[interior])
    return x


def _mean_zero(ops, values: np.ndarray) -> np.ndarray:
    m = ops.mass_p_vector
    return values - (m @ values) / m.sum()


def _zero_state(ops) -> SchemeState:
    p = Field.zeros(ops.pressure_space)
    return SchemeState(
        u1=Field.zeros(ops.velocity_space), u2=Field.zeros(ops.velocity_space), p_prev=p, p_curr=p.copy()
    )


class TestIncrementalStep:
    """Tests for one step of IncrementalScheme."""

    def test_matches_dense_oracle(self, th_ops_4):
        """One step agrees with dense direct solves of the same equations."""
        ops = th_ops_4
        k, nu = 0.1, 1.0
        solution = ManufacturedSolution(nu=nu)
        config = SchemeConfig(n=4, k=k, T=k, nu=nu, **TIGHT)
        scheme = IncrementalScheme(ops, config, solution.forcing)
        state = manufactured_initial_state(ops, solution)
        result = scheme.auxiliary_initial_step(state)

        mass, boundary = ops.mass_v.toarray(), ops.velocity_space.boundary_dofs
        matrix = (
            mass / k
            + nu * ops.stiff_v.toarray()
            + convection_matrix(ops.velocity_space, state.u1, state.u2).toarray()
        )
        b1, b2 = forcing_vector(ops.velocity_space, solution.forcing, k)
        p0 = state.p_curr.values
        u1 = _interior_solve(matrix, mass @ state.u1.values / k - ops.grad_x @ p0 + b1, boundary)
        u2 = _interior_solve(matrix, mass @ state.u2.values / k - ops.grad_y @ p0 + b2, boundary)
        rhs = ops.grad_x.T @ u1 + ops.grad_y.T @ u2
        increment = np.linalg.lstsq(k * ops.stiff_p.toarray(), rhs, rcond=None)[0]
        p1 = _mean_zero(ops, p0 + increment)

        assert np.allclose(result.state.u1.values, u1, rtol=1e-8, atol=1e-9)
        assert np.allclose(result.state.u2.values, u2, rtol=1e-8, atol=1e-9)
        assert np.allclose(result.state.p_curr.values, p1, rtol=1e-7, atol=1e-8)
        assert result.state.m == 1
        assert result.state.t == pytest.approx(k)
        assert np.array_equal(result.state.p_prev.values, p0)

    def test_zero_is_a_fixed_point(self, th_ops_4):
        """Zero data and zero forcing stay exactly zero."""
        scheme = IncrementalScheme(th_ops_4, SchemeConfig(n=4, k=0.1, T=0.5), zero_forcing)
        results = list(scheme.run(_zero_state(th_ops_4), 5))
        final = results[-1].state
        assert final.m == 5
        for field in (final.u1, final.u2, final.p_curr):
            assert np.all(field.values == 0.0)

    def test_auxiliary_step_only_at_start(self, th_ops_4):
        """The auxiliary initial step rejects states with m > 0."""
        scheme = IncrementalScheme(th_ops_4, SchemeConfig(n=4, k=0.1, T=0.5), zero_forcing)
        state = _zero_state(th_ops_4)
        state.m = 1
        with pytest.raises(ConfigError):
            scheme.auxiliary_initial_step(state)

    def test_velocity_vanishes_on_boundary(self, th_ops_4):
        """The intermediate velocity satisfies the no-slip condition."""
        solution = ManufacturedSolution()
        scheme = IncrementalScheme(th_ops_4, SchemeConfig(n=4, k=0.1, T=0.2), solution.forcing)
        state = manufactured_initial_state(th_ops_4, solution)
        boundary = th_ops_4.velocity_space.boundary_dofs
        for result in scheme.run(state, 2):
            assert np.all(result.state.u1.values[boundary] == 0.0)
            assert np.all(result.state.u2.values[boundary] == 0.0)

    def test_pressure_stays_mean_zero(self, th_ops_4):
        """Every pressure iterate has zero mass-weighted mean."""
        solution = ManufacturedSolution()
        scheme = IncrementalScheme(th_ops_4, SchemeConfig(n=4, k=0.1, T=0.3), solution.forcing)
        for result in scheme.run(manufactured_initial_state(th_ops_4, solution), 3):
            assert abs(th_ops_4.mass_p_vector @ result.state.p_curr.values) <= 1e-12

    def test_without_convection(self, th_ops_4):
        """With convection disabled the velocity operator is M/k + nu K."""
        config = SchemeConfig(n=4, k=0.1, T=0.1, nu=0.5, convection=False)
        scheme = IncrementalScheme(th_ops_4, config, zero_forcing)
        state = random_initial_state(th_ops_4, seed=1)
        matrix = scheme.velocity_operator(state.u1, state.u2)
        expected = th_ops_4.mass_v / 0.1 + 0.5 * th_ops_4.stiff_v
        assert abs(matrix - expected).max() <= 1e-12

    def test_component_solves_match_direct_solves(self, th_ops_4):
        """Both concurrently solved components equal their own dense solutions."""
        ops = th_ops_4
        scheme = IncrementalScheme(ops, SchemeConfig(n=4, k=0.1, T=0.1, **TIGHT), zero_forcing)
        matrix = ops.mass_v / 0.1 + ops.stiff_v
        rng = np.random.default_rng(5)
        rhs = (rng.standard_normal(ops.velocity_space.n_dofs), rng.standard_normal(ops.velocity_space.n_dofs))
        zero = np.zeros(ops.velocity_space.n_dofs)
        u1, u2, iterations = scheme.solve_components(matrix, rhs, (zero, zero))
        boundary = ops.velocity_space.boundary_dofs
        for field, b in ((u1, rhs[0]), (u2, rhs[1])):
            expected = _interior_solve(matrix.toarray(), b, boundary)
            assert np.allclose(field.values, expected, rtol=1e-8, atol=1e-10)
        assert iterations == scheme.timings.velocity_iterations > 0

    def test_records_timings_and_iterations(self, th_ops_4):
        """Assembly, solve time and iteration counts accumulate."""
        solution = ManufacturedSolution()
        scheme = IncrementalScheme(th_ops_4, SchemeConfig(n=4, k=0.1, T=0.2), solution.forcing)
        results = list(scheme.run(manufactured_initial_state(th_ops_4, solution), 2))
        assert scheme.timings.solve > 0.0
        assert scheme.timings.assembly > 0.0
        assert scheme.timings.velocity_iterations == sum(r.diagnostics.velocity_iterations for r in results)
        assert scheme.timings.pressure_iterations == sum(r.diagnostics.pressure_iterations for r in results)


class TestIncrementalInvariants:
    """Energy identity, orthogonality and unconditional stability."""

    @pytest.fixture(scope="class")
    def manufactured_run(self, th_ops_16):
        ops = th_ops_16
        config = SchemeConfig(n=16, k=0.05, T=1.0)
        solution = ManufacturedSolution()
        scheme = IncrementalScheme(ops, config, solution.forcing)
        return list(scheme.run(manufactured_initial_state(ops, solution), config.n_steps)), config

    def test_energy_identity(self, manufactured_run):
        """|u~|^2 = |u|^2 + k^2 |grad dp|^2 holds to round-off at every step."""
        results, _ = manufactured_run
        assert len(results) == 20
        for result in results:
            assert result.diagnostics.identity_residual <= 1e-9

    def test_orthogonality(self, manufactured_run):
        """The end-of-step velocity is orthogonal to discrete gradients up to the solver tolerance."""
        results, config = manufactured_run
        for result in results:
            d = result.diagnostics
            assert d.orthogonality_residual <= 10.0 * config.pressure_tol * max(1.0, d.orthogonality_scale)

    @pytest.mark.parametrize("k", [0.5, 0.1])
    def test_energy_never_increases(self, th_ops_16, k: float):
        """|u^m|^2 + k^2 |grad p^m|^2 is non-increasing for the unforced problem."""
        config = SchemeConfig(n=16, k=k, T=50 * k)
        scheme = IncrementalScheme(th_ops_16, config, zero_forcing)
        state = random_initial_state(th_ops_16, seed=7)
        energy = scheme.initial_diagnostics(state).energy
        for result in scheme.run(state, config.n_steps):
            current = result.diagnostics.energy
            assert current <= energy * (1.0 + 1e-8) + 1e-14
            energy = current

    @pytest.mark.parametrize("convection", [True, False])
    def test_invariants_without_convection(self, th_ops_16, convection: bool):
        """Identity, orthogonality and energy decay hold with or without the convection term."""
        config = SchemeConfig(n=16, k=0.1, T=2.0, convection=convection)
        scheme = IncrementalScheme(th_ops_16, config, zero_forcing)
        state = random_initial_state(th_ops_16, seed=7)
        energy = scheme.initial_diagnostics(state).energy
        for result in scheme.run(state, config.n_steps):
            d = result.diagnostics
            assert d.identity_residual <= 1e-9
            assert d.orthogonality_residual <= 10.0 * config.pressure_tol * max(1.0, d.orthogonality_scale)
            assert d.energy <= energy * (1.0 + 1e-8) + 1e-14
            energy = d.energy
