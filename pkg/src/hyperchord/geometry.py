"""Volume and surface-area facts for unit spheres, used alongside the
Fisher-information minimum in the dimension-analysis reports.

Conventions: S^n is the n-dimensional spherical surface embedded in
R^(n+1).  volume(n) is the Lebesgue volume pi^(n/2)/Gamma(n/2+1) of the
unit ball whose boundary convention matches the source formula, and
surface_area(n) = 2 pi^((n+1)/2) / Gamma((n+1)/2) is the n-dimensional
surface measure of S^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun


def volume(n: int) -> float:
    """pi^(n/2) / Gamma(n/2 + 1), log-domain evaluation."""
    if n < 1:
        raise ValueError(f"volume requires n >= 1, got {n!r}")
    return math.exp(0.5 * n * math.log(math.pi) - specfun.ln_gamma(0.5 * n + 1.0))


def surface_area(n: int) -> float:
    """2 pi^((n+1)/2) / Gamma((n+1)/2), log-domain evaluation."""
    if n < 1:
        raise ValueError(f"surface_area requires n >= 1, got {n!r}")
    return math.exp(
        math.log(2.0) + 0.5 * (n + 1) * math.log(math.pi) - specfun.ln_gamma(0.5 * (n + 1))
    )


@dataclass(frozen=True)
class SphereMetrics:
    n: int
    volume: float
    surface_area: float

    def __post_init__(self):
        if not (self.volume > 0.0 and self.surface_area > 0.0):
            raise ValueError("sphere metrics must be positive")


def metrics_table(n_min: int, n_max: int) -> list[SphereMetrics]:
    """Per-dimension table of both metrics over an inclusive integer range."""
    if n_min > n_max:
        raise ValueError(f"empty range [{n_min}, {n_max}]")
    return [SphereMetrics(n, volume(n), surface_area(n)) for n in range(n_min, n_max + 1)]


def argmax_over(n_min: int, n_max: int, metric: str = "volume") -> tuple[int, list[SphereMetrics]]:
    """Maximizing integer dimension plus the full table for reporting.

    metric is "volume" or "surface_area".  Ties resolve to the smallest n
    (no ties occur for these strictly unimodal sequences).
    """
    if metric not in ("volume", "surface_area"):
        raise ValueError(f"metric must be 'volume' or 'surface_area', got {metric!r}")
    table = metrics_table(n_min, n_max)
    best = max(table, key=lambda row: getattr(row, metric))
    return best.n, table
