"""Symmetric Gauss rules on the reference triangle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from projfem.errors import QuadratureError
from projfem.mesh.trimesh import FloatArray

MAX_DEGREE = 6


@dataclass(frozen=True)
class QuadratureRule:
    """
    Quadrature on the reference triangle in barycentric coordinates.

    Weights sum to one; the integral over a triangle of area A is
    A * sum(w_q * f(x_q)).
    """

    barycentric: FloatArray
    weights: FloatArray
    degree: int

    @property
    def n_points(self) -> int:
        return int(self.weights.shape[0])

    @property
    def reference_points(self) -> FloatArray:
        """Points in reference coordinates (xi, eta) = (lambda_1, lambda_2)."""
        result: FloatArray = self.barycentric[:, 1:3].copy()
        return result

    def integrate_reference(self, values: FloatArray) -> float:
        """Integrate sampled values over the reference triangle (area 1/2)."""
        return float(0.5 * np.dot(self.weights, values))


def _orbit(*coords: float) -> list[tuple[float, float, float]]:
    return sorted(set(permutations(coords)))  # type: ignore[arg-type]


def _rule(groups: list[tuple[float, tuple[float, ...]]], degree: int) -> QuadratureRule:
    points: list[tuple[float, float, float]] = []
    weights: list[float] = []
    for weight, coords in groups:
        if len(coords) == 1:
            orbit = [(coords[0],) * 3]
        elif len(coords) == 2:
            a, b = coords
            orbit = _orbit(a, b, b)
        else:
            orbit = _orbit(*coords)
        points.extend(orbit)  # type: ignore[arg-type]
        weights.extend([weight] * len(orbit))
    bary = np.array(points, dtype=np.float64)
    bary[:, 0] = 1.0 - bary[:, 1] - bary[:, 2]
    return QuadratureRule(
        barycentric=bary,
        weights=np.array(weights, dtype=np.float64),
        degree=degree,
    )


# Dunavant's rules (all weights positive).
_RULES: dict[int, list[tuple[float, tuple[float, ...]]]] = {
    1: [(1.0, (1.0 / 3.0,))],
    2: [(1.0 / 3.0, (2.0 / 3.0, 1.0 / 6.0))],
    4: [
        (0.223381589678011, (0.108103018168070, 0.445948490915965)),
        (0.109951743655322, (0.816847572980459, 0.091576213509771)),
    ],
    5: [
        (0.225, (1.0 / 3.0,)),
        (0.132394152788506, (0.059715871789770, 0.470142064105115)),
        (0.125939180544827, (0.797426985353087, 0.101286507323456)),
    ],
    6: [
        (0.116786275726379, (0.501426509658179, 0.249286745170910)),
        (0.050844906370207, (0.873821971016996, 0.063089014491502)),
        (0.082851075618374, (0.053145049844817, 0.310352451033784, 0.636502499121399)),
    ],
}


@lru_cache(maxsize=None)
def quadrature_rule(degree: int) -> QuadratureRule:
    """
    Return a rule exact for polynomials of total degree ``degree``.

    The returned rule may be exact to a higher degree (degree 3 is served
    by the degree-4 rule).

    Raises:
        QuadratureError: If degree is outside 1..6.
    """
    if degree < 1 or degree > MAX_DEGREE:
        raise QuadratureError(
            f"Quadrature degree must be in 1..{MAX_DEGREE}, got {degree}"
        )
    for available in sorted(_RULES):
        if available >= degree:
            rule = _rule(_RULES[available], available)
            # Tabulated weights carry 15 digits.
            weights = rule.weights / rule.weights.sum()
            weights.setflags(write=False)
            rule.barycentric.setflags(write=False)
            return QuadratureRule(rule.barycentric, weights, rule.degree)
    raise QuadratureError(f"No rule for degree {degree}")  # pragma: no cover
