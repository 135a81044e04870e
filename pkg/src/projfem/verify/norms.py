"""Discrete-in-time error norms of FE histories against the exact solution."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from projfem.errors import NormError
from projfem.fem.space import Field
from projfem.mesh.trimesh import FloatArray
from projfem.verify.exact import ManufacturedSolution

ERROR_DEGREE = 6

# Summary norms in table row order.
NORM_NAMES: tuple[str, ...] = (
    "u1_linf_l2",
    "u1_linf_h1",
    "u2_linf_l2",
    "u2_linf_h1",
    "p_l2_l2",
    "p_linf_l2",
)

NORM_LABELS: dict[str, str] = {
    "u1_linf_l2": "||u1|| l∞(L2)",
    "u1_linf_h1": "||u1|| l∞(H1-semi)",
    "u2_linf_l2": "||u2|| l∞(L2)",
    "u2_linf_h1": "||u2|| l∞(H1-semi)",
    "p_l2_l2": "||p|| l2(L2)",
    "p_linf_l2": "||p|| l∞(L2)",
}


@dataclass(frozen=True)
class StepErrors:
    """Spatial errors at one time level."""

    t: float
    u1_l2: float
    u1_h1: float
    u2_l2: float
    u2_h1: float
    p_l2: float


def linf_norm(values: Sequence[float] | FloatArray) -> float:
    """max_m |e^m|."""
    return float(np.max(np.abs(np.asarray(values, dtype=np.float64))))


def l2_norm(values: Sequence[float] | FloatArray, k: float) -> float:
    """(k sum_{m=0}^{M} |e^m|^2)^(1/2)."""
    arr = np.asarray(values, dtype=np.float64)
    return float(np.sqrt(k * np.sum(arr**2)))


@dataclass
class ErrorSeries:
    """Per-step errors, including the initial time level."""

    k: float
    times: list[float] = field(default_factory=list)
    u1_l2: list[float] = field(default_factory=list)
    u1_h1: list[float] = field(default_factory=list)
    u2_l2: list[float] = field(default_factory=list)
    u2_h1: list[float] = field(default_factory=list)
    p_l2: list[float] = field(default_factory=list)

    def append(self, errors: StepErrors) -> None:
        self.times.append(errors.t)
        self.u1_l2.append(errors.u1_l2)
        self.u1_h1.append(errors.u1_h1)
        self.u2_l2.append(errors.u2_l2)
        self.u2_h1.append(errors.u2_h1)
        self.p_l2.append(errors.p_l2)

    def __len__(self) -> int:
        return len(self.times)

    def summary(self) -> dict[str, float]:
        """Table norms: l∞ over all steps, l2 with weight k."""
        if not self.times:
            raise NormError("Empty error series")
        return {
            "u1_linf_l2": linf_norm(self.u1_l2),
            "u1_linf_h1": linf_norm(self.u1_h1),
            "u2_linf_l2": linf_norm(self.u2_l2),
            "u2_linf_h1": linf_norm(self.u2_h1),
            "p_l2_l2": l2_norm(self.p_l2, self.k),
            "p_linf_l2": linf_norm(self.p_l2),
        }

    def rows(self) -> list[tuple[int, float, float, float, float, float, float]]:
        return [
            (m, self.times[m], self.u1_l2[m], self.u1_h1[m], self.u2_l2[m], self.u2_h1[m], self.p_l2[m])
            for m in range(len(self.times))
        ]


def _component_errors(uh: Field, exact: FloatArray, exact_grad: tuple[FloatArray, FloatArray]) -> tuple[float, float]:
    data = uh.space.quadrature(ERROR_DEGREE)
    values, gradients = uh.at_quadrature(ERROR_DEGREE)
    diff = exact - values
    gx = exact_grad[0] - gradients[..., 0]
    gy = exact_grad[1] - gradients[..., 1]
    l2 = float(np.sqrt(np.sum(data.weights * diff**2)))
    h1 = float(np.sqrt(np.sum(data.weights * (gx**2 + gy**2))))
    return l2, h1


def step_errors(
    t: float,
    u1: Field,
    u2: Field,
    p: Field,
    solution: ManufacturedSolution | None = None,
) -> StepErrors:
    """
    L2 and H1-seminorm velocity errors and L2 pressure error at time t.

    Both pressures are shifted to zero mean before comparison.
    """
    solution = solution or ManufacturedSolution()
    vdata = u1.space.quadrature(ERROR_DEGREE)
    x, y = vdata.points[..., 0], vdata.points[..., 1]
    e1, e2 = solution.velocity(x, y, t)
    g1, g2 = solution.velocity_gradient(x, y, t)
    u1_l2, u1_h1 = _component_errors(u1, e1, g1)
    u2_l2, u2_h1 = _component_errors(u2, e2, g2)

    pdata = p.space.quadrature(ERROR_DEGREE)
    ph, _ = p.at_quadrature(ERROR_DEGREE)
    pe = solution.pressure(pdata.points[..., 0], pdata.points[..., 1], t)
    area = float(np.sum(pdata.weights))
    ph = ph - np.sum(pdata.weights * ph) / area
    pe = pe - np.sum(pdata.weights * pe) / area
    p_l2 = float(np.sqrt(np.sum(pdata.weights * (pe - ph) ** 2)))
    return StepErrors(t, u1_l2, u1_h1, u2_l2, u2_h1, p_l2)


def error_norms(
    times: Sequence[float],
    u1_history: Sequence[Field],
    u2_history: Sequence[Field],
    p_history: Sequence[Field],
    k: float,
    solution: ManufacturedSolution | None = None,
) -> ErrorSeries:
    """
    Error series of a full run history sampled at every t_m.

    Raises:
        NormError: If the histories do not all have one entry per time.
    """
    lengths = {len(times), len(u1_history), len(u2_history), len(p_history)}
    if len(lengths) != 1:
        raise NormError(
            f"History length mismatch: times={len(times)}, u1={len(u1_history)}, "
            f"u2={len(u2_history)}, p={len(p_history)}"
        )
    series = ErrorSeries(k=k)
    for t, u1, u2, p in zip(times, u1_history, u2_history, p_history):
        series.append(step_errors(t, u1, u2, p, solution))
    return series
