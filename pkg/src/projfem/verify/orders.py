"""Observed convergence orders between successive time steps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from projfem.errors import NormError
from projfem.verify.norms import NORM_NAMES


def observed_order(e_coarse: float, e_fine: float, k_coarse: float, k_fine: float) -> float:
    """
    ln(e_coarse / e_fine) / ln(k_coarse / k_fine).

    Raises:
        NormError: On non-positive errors or steps, or k_coarse <= k_fine.
    """
    if e_coarse <= 0.0 or e_fine <= 0.0:
        raise NormError(f"Errors must be positive, got {e_coarse}, {e_fine}")
    if k_fine <= 0.0 or k_coarse <= k_fine:
        raise NormError(f"Need k_coarse > k_fine > 0, got {k_coarse}, {k_fine}")
    return math.log(e_coarse / e_fine) / math.log(k_coarse / k_fine)


@dataclass
class ConvergenceReport:
    """Summary norms per time step and the orders between consecutive steps."""

    scheme: str
    pair: str
    n: int
    ks: list[float] = field(default_factory=list)
    norms: list[dict[str, float]] = field(default_factory=list)
    runtime_seconds: float = 0.0

    def add(self, k: float, norms: dict[str, float]) -> None:
        if self.ks and k >= self.ks[-1]:
            raise NormError(f"Time steps must decrease, got {k} after {self.ks[-1]}")
        self.ks.append(k)
        self.norms.append(dict(norms))

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.ks[:-1], self.ks[1:]))

    @property
    def orders(self) -> list[dict[str, float]]:
        result = []
        for i in range(len(self.ks) - 1):
            result.append(
                {
                    name: observed_order(
                        self.norms[i][name], self.norms[i + 1][name], self.ks[i], self.ks[i + 1]
                    )
                    for name in NORM_NAMES
                    if name in self.norms[i] and name in self.norms[i + 1]
                }
            )
        return result
