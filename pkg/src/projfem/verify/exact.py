"""Manufactured exact solution on the unit square and its forcing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from projfem.mesh.trimesh import FloatArray

TWO_PI = 2.0 * np.pi

# Analytic L2 norms at t = 0, used to validate quadrature:
#   ||u1(0)||^2 = int (cos 2pi x - 1)^2 dx * int sin^2 2pi y dy = 3/2 * 1/2 = 3/4
#   ||u2(0)||^2 = 3/4 by symmetry
#   ||p(0)||^2  = 4pi^2 int int (sin 2pi x + sin 2pi y)^2 = 4pi^2 (1/2 + 1/2)
U1_L2_SQUARED_AT_ZERO = 0.75
U2_L2_SQUARED_AT_ZERO = 0.75
P_L2_SQUARED_AT_ZERO = 4.0 * np.pi**2


def exact_velocity(x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
    decay = np.exp(-t)
    u1 = decay * (np.cos(TWO_PI * x) - 1.0) * np.sin(TWO_PI * y)
    u2 = -decay * (np.cos(TWO_PI * y) - 1.0) * np.sin(TWO_PI * x)
    return u1, u2


def exact_pressure(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
    result: FloatArray = TWO_PI * np.exp(-t) * (np.sin(TWO_PI * x) + np.sin(TWO_PI * y))
    return result


def exact_velocity_gradient(
    x: FloatArray, y: FloatArray, t: float
) -> tuple[tuple[FloatArray, FloatArray], tuple[FloatArray, FloatArray]]:
    """((du1/dx, du1/dy), (du2/dx, du2/dy))."""
    a = TWO_PI
    decay = np.exp(-t)
    du1_dx = -decay * a * np.sin(a * x) * np.sin(a * y)
    du1_dy = decay * a * (np.cos(a * x) - 1.0) * np.cos(a * y)
    du2_dx = -decay * a * (np.cos(a * y) - 1.0) * np.cos(a * x)
    du2_dy = decay * a * np.sin(a * y) * np.sin(a * x)
    return (du1_dx, du1_dy), (du2_dx, du2_dy)


def exact_velocity_laplacian(x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
    a = TWO_PI
    decay = np.exp(-t)
    lap1 = decay * a**2 * np.sin(a * y) * (1.0 - 2.0 * np.cos(a * x))
    lap2 = -decay * a**2 * np.sin(a * x) * (1.0 - 2.0 * np.cos(a * y))
    return lap1, lap2


def exact_pressure_gradient(x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
    scale = TWO_PI**2 * np.exp(-t)
    return scale * np.cos(TWO_PI * x), scale * np.cos(TWO_PI * y)


def exact_solution(t: float, x: FloatArray, y: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Pointwise (u1, u2, p) of the manufactured solution."""
    u1, u2 = exact_velocity(x, y, t)
    return u1, u2, exact_pressure(x, y, t)


def forcing(t: float, x: FloatArray, y: FloatArray, nu: float) -> tuple[FloatArray, FloatArray]:
    """f = u_t + (u . grad) u - nu lap u + grad p, with u_t = -u."""
    u1, u2 = exact_velocity(x, y, t)
    (du1_dx, du1_dy), (du2_dx, du2_dy) = exact_velocity_gradient(x, y, t)
    lap1, lap2 = exact_velocity_laplacian(x, y, t)
    dp_dx, dp_dy = exact_pressure_gradient(x, y, t)
    f1 = -u1 + u1 * du1_dx + u2 * du1_dy - nu * lap1 + dp_dx
    f2 = -u2 + u1 * du2_dx + u2 * du2_dy - nu * lap2 + dp_dy
    return f1, f2


@dataclass(frozen=True)
class ManufacturedSolution:
    """The exact solution bundled with a viscosity, in the library's call shapes."""

    nu: float = 1.0

    def velocity(self, x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
        return exact_velocity(x, y, t)

    def pressure(self, x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        return exact_pressure(x, y, t)

    def velocity_gradient(
        self, x: FloatArray, y: FloatArray, t: float
    ) -> tuple[tuple[FloatArray, FloatArray], tuple[FloatArray, FloatArray]]:
        return exact_velocity_gradient(x, y, t)

    def forcing(self, x: FloatArray, y: FloatArray, t: float) -> tuple[FloatArray, FloatArray]:
        return forcing(t, x, y, self.nu)
