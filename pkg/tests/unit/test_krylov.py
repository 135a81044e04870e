"""Unit tests for the CSR helpers and Krylov solvers."""

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from projfem.assemble import ConvectionOperator
from projfem.errors import AssemblyError
from projfem.fem import Field
from projfem.sparse import (
    JacobiPreconditioner,
    MeanZero,
    SparsityPattern,
    bicgstab_solve,
    cg_solve,
    spmv,
)


class TestSpmv:
    """Tests for spmv."""

    def test_identity(self):
        """I x = x."""
        x = np.array([1.0, -2.0, 3.0])
        assert np.array_equal(spmv(sp.identity(3, format="csr"), x), x)

    def test_rectangular(self):
        """A 2x3 matrix maps R^3 to R^2."""
        matrix = sp.csr_matrix(np.array([[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]]))
        assert np.array_equal(spmv(matrix, np.array([1.0, 1.0, 1.0])), [3.0, 3.0])

    def test_dimension_mismatch(self):
        """A vector of the wrong length raises AssemblyError."""
        with pytest.raises(AssemblyError):
            spmv(sp.identity(3, format="csr"), np.ones(4))


class TestSparsityPattern:
    """Tests for SparsityPattern."""

    def test_sums_overlapping_entries(self):
        """Element contributions to a shared entry are summed."""
        dofs = np.array([[0, 1], [1, 2]])
        pattern = SparsityPattern(dofs, dofs, (3, 3))
        local = np.ones((2, 2, 2))
        assert pattern.nnz == 7
        assert np.array_equal(
            pattern.assemble(local).toarray(), [[1, 1, 0], [1, 2, 1], [0, 1, 1]]
        )

    def test_rejects_wrong_local_shape(self):
        """Element matrices of the wrong shape raise AssemblyError."""
        dofs = np.array([[0, 1]])
        with pytest.raises(AssemblyError):
            SparsityPattern(dofs, dofs, (2, 2)).assemble(np.ones((1, 3, 3)))


class TestCg:
    """Tests for cg_solve."""

    def test_identity_in_one_iteration(self):
        """CG on I converges in one iteration."""
        b = np.array([1.0, 2.0, 3.0])
        x, report = cg_solve(sp.identity(3, format="csr"), b)
        assert np.allclose(x, b)
        assert report.converged
        assert report.iterations == 1

    def test_diagonal(self):
        """diag(1, 4) x = (1, 4) gives x = (1, 1)."""
        x, report = cg_solve(sp.diags([1.0, 4.0]).tocsr(), np.array([1.0, 4.0]), tol=1e-12)
        assert np.allclose(x, [1.0, 1.0])
        assert report.iterations <= 2

    def test_zero_rhs(self):
        """b = 0 returns x = 0 without iterating."""
        x, report = cg_solve(sp.identity(4, format="csr"), np.zeros(4))
        assert np.all(x == 0.0)
        assert report.converged and report.iterations == 0

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1), n=st.integers(min_value=2, max_value=30))
    @settings(max_examples=25, deadline=None)
    def test_random_spd(self, seed: int, n: int):
        """CG solves well-conditioned random SPD systems to the requested tolerance."""
        rng = np.random.default_rng(seed)
        q = rng.standard_normal((n, n))
        matrix = sp.csr_matrix(q @ q.T + n * np.eye(n))
        b = rng.standard_normal(n)
        x, report = cg_solve(matrix, b, tol=1e-10, preconditioner="jacobi")
        assert report.converged
        assert np.linalg.norm(matrix @ x - b) <= 1e-10 * np.linalg.norm(b) * 1.0001

    def test_neumann_matches_pseudo_inverse(self, th_ops_4):
        """The mean-zero Neumann solution matches the projected pseudo-inverse solution."""
        ops = th_ops_4
        nullspace = MeanZero(ops.mass_p_vector)
        f = np.random.default_rng(9).standard_normal(ops.pressure_space.n_dofs)
        b = MeanZero.project_rhs(ops.mass_p @ f)
        x, report = cg_solve(ops.stiff_p, b, tol=1e-12, nullspace=nullspace)
        assert report.converged
        reference = nullspace.project(np.linalg.pinv(ops.stiff_p.toarray()) @ b)
        assert np.allclose(x, reference, atol=1e-9)
        assert abs(ops.mass_p_vector @ x) <= 1e-12

    def test_reports_non_convergence(self):
        """An exhausted iteration budget is reported, not raised."""
        matrix = sp.diags(np.arange(1.0, 51.0)).tocsr()
        _, report = cg_solve(matrix, np.ones(50), tol=1e-14, max_iter=2)
        assert not report.converged
        assert report.iterations == 2
        assert "NOT converged" in str(report)

    def test_rejects_non_square(self):
        """Non-square matrices raise AssemblyError."""
        with pytest.raises(AssemblyError):
            cg_solve(sp.csr_matrix(np.ones((2, 3))), np.ones(2))


class TestMeanZero:
    """Tests for MeanZero."""

    def test_projection_is_idempotent(self, th_ops_4):
        """project removes the weighted mean and is idempotent."""
        nullspace = MeanZero(th_ops_4.mass_p_vector)
        x = np.random.default_rng(2).standard_normal(th_ops_4.pressure_space.n_dofs) + 3.0
        once = nullspace.project(x)
        assert abs(th_ops_4.mass_p_vector @ once) <= 1e-13
        assert np.allclose(nullspace.project(once), once, atol=1e-15)

    def test_rhs_projection(self):
        """project_rhs makes b orthogonal to the constants."""
        assert MeanZero.project_rhs(np.array([1.0, 2.0, 6.0])).sum() == pytest.approx(0.0)


class TestBicgstab:
    """Tests for bicgstab_solve."""

    def test_agrees_with_cg_on_spd(self, th_ops_4):
        """On an SPD system BiCGStab and CG agree."""
        matrix = (th_ops_4.mass_v + th_ops_4.stiff_v).tocsr()
        b = np.random.default_rng(4).standard_normal(matrix.shape[0])
        x_cg, _ = cg_solve(matrix, b, tol=1e-12, preconditioner="jacobi")
        x_bi, report = bicgstab_solve(matrix, b, tol=1e-12)
        assert report.converged
        assert np.allclose(x_bi, x_cg, atol=1e-9)

    def test_upper_triangular(self):
        """A non-symmetric upper-triangular system."""
        matrix = sp.csr_matrix(np.array([[2.0, 1.0, 0.0], [0.0, 3.0, 1.0], [0.0, 0.0, 4.0]]))
        expected = np.array([1.0, -1.0, 2.0])
        x, report = bicgstab_solve(matrix, matrix @ expected, tol=1e-12)
        assert report.converged
        assert np.allclose(x, expected, atol=1e-10)

    def test_mass_plus_convection(self, th_ops_8):
        """M + N(w) is solved to tolerance with a shared Jacobi preconditioner."""
        space = th_ops_8.velocity_space
        rng = np.random.default_rng(8)
        w1 = Field(space, rng.standard_normal(space.n_dofs))
        w2 = Field(space, rng.standard_normal(space.n_dofs))
        matrix = (th_ops_8.mass_v / 0.1 + ConvectionOperator(space).assemble(w1, w2)).tocsr()
        preconditioner = JacobiPreconditioner(matrix)
        for seed in (1, 2):
            b = np.random.default_rng(seed).standard_normal(space.n_dofs)
            x, report = bicgstab_solve(matrix, b, tol=1e-10, preconditioner=preconditioner)
            assert report.converged
            assert np.linalg.norm(matrix @ x - b) <= 1.0001e-10 * np.linalg.norm(b)

    def test_initial_guess_solution(self):
        """Starting at the solution needs no iterations."""
        matrix = sp.diags([2.0, 5.0]).tocsr()
        x, report = bicgstab_solve(matrix, np.array([2.0, 5.0]), x0=np.array([1.0, 1.0]))
        assert report.converged and report.iterations == 0
        assert np.allclose(x, [1.0, 1.0])


class TestJacobiPreconditioner:
    """Tests for JacobiPreconditioner."""

    def test_applies_inverse_diagonal(self):
        """apply scales by the inverse diagonal."""
        pc = JacobiPreconditioner(sp.diags([2.0, 4.0]).tocsr())
        assert np.array_equal(pc.apply(np.array([2.0, 2.0])), [1.0, 0.5])

    def test_rejects_zero_diagonal(self):
        """A zero diagonal entry raises AssemblyError."""
        with pytest.raises(AssemblyError):
            JacobiPreconditioner(sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
