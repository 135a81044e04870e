"""Unit tests for triangle quadrature rules."""

import math

import numpy as np
import pytest

from projfem.errors import QuadratureError
from projfem.fem import quadrature_rule


def _monomial_integral(a: int, b: int, c: int) -> float:
    """Exact integral of l0^a l1^b l2^c over the reference triangle."""
    return math.factorial(a) * math.factorial(b) * math.factorial(c) / math.factorial(a + b + c + 2)


class TestQuadratureRule:
    """Tests for quadrature_rule."""

    @pytest.mark.parametrize("degree", range(1, 7))
    def test_weights_sum_to_one(self, degree: int):
        """Weights are normalised so that the constant 1 integrates to 1/2."""
        rule = quadrature_rule(degree)
        assert rule.degree >= degree
        assert abs(rule.weights.sum() - 1.0) <= 1e-14
        assert rule.integrate_reference(np.ones(rule.n_points)) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("degree", range(1, 7))
    def test_points_inside_triangle(self, degree: int):
        """Barycentric coordinates are non-negative and sum to one."""
        rule = quadrature_rule(degree)
        assert np.all(rule.barycentric >= -1e-15)
        assert np.allclose(rule.barycentric.sum(axis=1), 1.0)

    @pytest.mark.parametrize("degree", range(1, 7))
    def test_exact_up_to_degree(self, degree: int):
        """Every barycentric monomial of total degree <= degree is integrated exactly."""
        rule = quadrature_rule(degree)
        lam = rule.barycentric
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                c = degree - a - b
                values = lam[:, 0] ** a * lam[:, 1] ** b * lam[:, 2] ** c
                assert rule.integrate_reference(values) == pytest.approx(
                    _monomial_integral(a, b, c), rel=1e-12, abs=1e-15
                )

    def test_second_moment(self):
        """Degree 2 integrates l1^2 to 1/12."""
        rule = quadrature_rule(2)
        assert rule.integrate_reference(rule.barycentric[:, 1] ** 2) == pytest.approx(1 / 12, rel=1e-13)

    def test_fourth_moment(self):
        """Degree 4 integrates l1^2 l2^2 to 1/180."""
        rule = quadrature_rule(4)
        lam = rule.barycentric
        assert rule.integrate_reference(lam[:, 1] ** 2 * lam[:, 2] ** 2) == pytest.approx(
            1 / 180, rel=1e-13
        )

    def test_reference_points_are_last_two_coordinates(self):
        """Reference coordinates (xi, eta) are (l1, l2)."""
        rule = quadrature_rule(3)
        assert np.array_equal(rule.reference_points, rule.barycentric[:, 1:3])

    @pytest.mark.parametrize("degree", [0, 7, -1])
    def test_rejects_unsupported_degree(self, degree: int):
        """Degrees outside 1..6 raise QuadratureError."""
        with pytest.raises(QuadratureError):
            quadrature_rule(degree)
