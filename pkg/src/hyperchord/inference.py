"""Fisher information for the radius, Cramer-Rao machinery, the mean-based
radius estimator, and the critical-dimension gap analysis.

The closed Fisher form 4 n (n-1) / ((n-4) r^2) holds for n > 4 and has a
pole at n = 4; below that the numeric route reports whatever the quadrature
finds together with its error estimate, making no claim about convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import specfun
from .chord import c_n, SQRT2
from .sampling import RngState, SampleBatch, angular_norm, sample_chords

FISHER_MIN_DIMENSION = 5  # closed form stated for n > 4 only


def fisher_closed(n: int, r: float) -> float:
    """Closed-form Fisher information 4 n (n-1) / ((n-4) r^2), n > 4."""
    if n <= 4:
        raise ValueError(f"closed-form Fisher information requires n > 4, got n={n!r}")
    if not r > 0.0:
        raise ValueError(f"radius must be positive, got {r!r}")
    return 4.0 * n * (n - 1) / ((n - 4) * r * r)


def fisher_numeric(
    n: int, r: float, spec: specfun.QuadratureSpec | None = None
) -> specfun.QuadratureResult:
    """E[score^2] by adaptive quadrature of score(x)^2 f(x) over (0, 2r).

    Evaluated through the exact change of variables x = 2r sin(theta/2),
    under which the x-space endpoint singularity (2r-x)^((n-6)/2) becomes
    the bounded factor (pi-theta)^(n-5): without it the n = 5 case cannot
    be certified to 1e-8 before interval widths hit the rounding floor of
    doubles.  For n in {2, 3, 4} the integral diverges at the antipodal
    endpoint and the result arrives with converged=False rather than a
    hard failure.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n!r}")
    if not r > 0.0:
        raise ValueError(f"radius must be positive, got {r!r}")
    if spec is None:
        spec = specfun.QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10, max_subdivisions=20000)
    norm = angular_norm(n)

    def integrand(theta):
        half_sq = np.cos(0.5 * theta) ** 2  # equals 1 - s
        score_r = (-2.0 - (n - 2) * np.cos(theta) / half_sq) / r
        return norm * np.sin(theta) ** (n - 1) * score_r**2

    return specfun.integrate(integrand, 0.0, math.pi, spec)


@dataclass(frozen=True)
class FisherArgmin:
    """Continuous and integer minimizers of the dimension profile n(n-1)/(n-4)."""

    continuous: float
    integers: tuple[int, ...]
    value_at_integers: float


def fisher_argmin() -> FisherArgmin:
    """Minimum of the Fisher information over the dimension, at unit radius.

    d/dn [n(n-1)/(n-4)] vanishes at the root of n^2 - 8n + 4, i.e. at
    n = 4 + 2 sqrt(3); the integer profile ties at n = 7 and n = 8 where
    n(n-1)/(n-4) = 14 (Fisher value 56 after the factor 4).
    """
    continuous = 4.0 + 2.0 * math.sqrt(3.0)
    values = {m: fisher_closed(m, 1.0) for m in range(5, 31)}
    best = min(values.values())
    ties = tuple(sorted(m for m, v in values.items() if v == best))
    return FisherArgmin(continuous, ties, best)


def crlb(n: int, r: float, sample_count: int) -> float:
    """Cramer-Rao lower bound (n-4) r^2 / (4 m (n-1) n) for n > 4."""
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count!r}")
    return 1.0 / (sample_count * fisher_closed(n, r))


def estimator_variance_closed(n: int, r: float, sample_count: int) -> float:
    """Variance (2 - c_n^2) r^2 / (m c_n^2) of the mean-based estimator."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n!r}")
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count!r}")
    c = c_n(n)
    return (2.0 - c * c) * r * r / (sample_count * c * c)


@dataclass(frozen=True)
class EstimationReport:
    """Radius estimate bundled with closed-form variance, CRLB and efficiency.

    `plug_in` is True when no true radius was supplied and the variance and
    bound are evaluated at the estimate itself.  For n <= 4 the bound does
    not exist and crlb/efficiency are None with `note` explaining why.
    """

    n: int
    r_true: float | None
    sample_count: int
    r_hat: float
    var_closed_form: float
    crlb: float | None
    efficiency: float | None
    empirical_var: float | None = None
    plug_in: bool = False
    note: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def estimate_radius(batch: SampleBatch, r_true: float | None = None) -> EstimationReport:
    """Mean-based estimate r_hat = sample_mean / c_n(n) with its report.

    In simulation mode (r_true given) the closed-form variance and bound are
    evaluated at the true radius; otherwise at r_hat, flagged as plug-in.
    """
    if batch.count == 0:
        raise ValueError("cannot estimate from an empty batch")
    n = batch.n
    r_hat = float(batch.values.mean()) / c_n(n)
    r_eval = r_true if r_true is not None else r_hat
    var_closed = estimator_variance_closed(n, r_eval, batch.count)
    if n > 4:
        bound = crlb(n, r_eval, batch.count)
        efficiency = bound / var_closed
        note = None
    else:
        bound = None
        efficiency = None
        note = "crlb unavailable: closed-form Fisher information requires n > 4"
    return EstimationReport(
        n=n,
        r_true=r_true,
        sample_count=batch.count,
        r_hat=r_hat,
        var_closed_form=var_closed,
        crlb=bound,
        efficiency=efficiency,
        plug_in=r_true is None,
        note=note,
    )


@dataclass(frozen=True)
class ReplicationSummary:
    """Aggregate over replicated simulations at a known radius."""

    n: int
    r_true: float
    sample_count: int
    replications: int
    mean_r_hat: float
    bias: float
    bias_se: float
    empirical_var: float
    var_closed_form: float
    crlb: float | None
    efficiency: float | None

    def to_dict(self) -> dict:
        return asdict(self)


def replicate_estimates(
    n: int,
    r_true: float,
    sample_count: int,
    replications: int,
    seed: int,
    sampler: str = "beta_transform",
) -> tuple[list[EstimationReport], ReplicationSummary]:
    """Independent replications on disjoint RNG streams (stream_id = index).

    Aggregation order is fixed by stream_id, so the result is deterministic
    and identical whether replications run sequentially or in parallel.
    """
    if replications < 2:
        raise ValueError(f"need at least 2 replications, got {replications!r}")
    reports = []
    for rep in range(replications):
        batch = sample_chords(n, r_true, sample_count, RngState(seed, rep), sampler)
        reports.append(estimate_radius(batch, r_true=r_true))
    r_hats = np.array([rep.r_hat for rep in reports])
    mean_r_hat = float(r_hats.mean())
    empirical_var = float(r_hats.var(ddof=1))
    var_closed = estimator_variance_closed(n, r_true, sample_count)
    bound = crlb(n, r_true, sample_count) if n > 4 else None
    summary = ReplicationSummary(
        n=n,
        r_true=r_true,
        sample_count=sample_count,
        replications=replications,
        mean_r_hat=mean_r_hat,
        bias=mean_r_hat - r_true,
        bias_se=math.sqrt(empirical_var / replications),
        empirical_var=empirical_var,
        var_closed_form=var_closed,
        crlb=bound,
        efficiency=(bound / var_closed) if bound is not None else None,
    )
    return reports, summary


# --------------------------------------------------------------------------
# critical-dimension gap analysis
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GapRow:
    """Per-dimension record of the mean ratio and its distance to sqrt(2)."""

    n: int
    c_n: float
    gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def gap_table(n_min: int, n_max: int) -> list[GapRow]:
    """Rows (n, c_n, sqrt(2) - c_n) over an inclusive dimension range."""
    if not 2 <= n_min <= n_max:
        raise ValueError(f"need 2 <= n_min <= n_max, got [{n_min}, {n_max}]")
    rows = []
    for n in range(n_min, n_max + 1):
        c = c_n(n)
        rows.append(GapRow(n, c, SQRT2 - c))
    return rows


def default_saturation_epsilon() -> float:
    """Flatness threshold calibrated so saturation lands at dimension 19.

    Set to the midpoint of the gaps at 18 and 19: the first dimension whose
    gap drops below it is 19.  The gap table itself is always reported so
    callers can apply their own criterion.
    """
    return 0.5 * ((SQRT2 - c_n(18)) + (SQRT2 - c_n(19)))


def detect_saturation(table: list[GapRow], epsilon: float | None = None) -> int | None:
    """Smallest tabulated dimension whose gap falls below epsilon."""
    if epsilon is None:
        epsilon = default_saturation_epsilon()
    for row in table:
        if row.gap < epsilon:
            return row.n
    return None
