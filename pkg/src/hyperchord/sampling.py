"""Random chord generation by three independent routes, the angular density
behind the geometric construction, and Kolmogorov-Smirnov helpers.

Reproducibility contract: a batch is fully determined by (seed, stream_id,
count).  Streams use the counter-based Philox generator keyed on the pair,
so disjoint stream_ids give independent sequences that can be drawn in
parallel and merged in any order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox

from . import specfun
from .chord import ChordDistribution, c_n

SAMPLER_KINDS = ("geometric", "beta_transform", "inverse_cdf")

_U64 = 2**64


@dataclass(frozen=True)
class RngState:
    """Seed plus stream identifier; equal pairs reproduce bit-for-bit."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < _U64):
            raise ValueError(f"seed must fit in 64 bits, got {self.seed!r}")
        if not (0 <= self.stream_id < _U64):
            raise ValueError(f"stream_id must fit in 64 bits, got {self.stream_id!r}")

    def generator(self) -> Generator:
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return Generator(Philox(key=key))


@dataclass
class SampleBatch:
    """Chord lengths with their provenance."""

    n: int
    r: float
    sampler: str
    seed: int
    stream_id: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.sampler not in SAMPLER_KINDS:
            raise ValueError(f"unknown sampler kind {self.sampler!r}")
        if self.values.ndim != 1:
            raise ValueError("values must be a 1-d array")
        if np.any((self.values <= 0.0) | (self.values >= 2.0 * self.r)):
            raise ValueError("chord values must lie strictly inside (0, 2r)")

    @property
    def count(self) -> int:
        return self.values.size

    def to_csv(self, fileobj) -> None:
        """Header row with the provenance, then one value per line."""
        fileobj.write("n,r,sampler,seed,stream_id,count\n")
        fileobj.write(
            f"{self.n},{self.r!r},{self.sampler},{self.seed},{self.stream_id},{self.count}\n"
        )
        fileobj.write("value\n")
        for v in self.values:
            fileobj.write(f"{v:.17g}\n")

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, fileobj) -> "SampleBatch":
        header = fileobj.readline().strip().split(",")
        if header != ["n", "r", "sampler", "seed", "stream_id", "count"]:
            raise ValueError(f"unrecognized batch header {header!r}")
        n, r, sampler, seed, stream_id, count = fileobj.readline().strip().split(",")
        if fileobj.readline().strip() != "value":
            raise ValueError("missing value column header")
        values = np.array([float(line) for line in fileobj if line.strip()])
        batch = cls(int(n), float(r), sampler, int(seed), int(stream_id), values)
        if batch.count != int(count):
            raise ValueError(f"batch length {batch.count} does not match header count {count}")
        return batch


# --------------------------------------------------------------------------
# samplers
# --------------------------------------------------------------------------


def sample_sphere_point(n: int, r: float, rng: Generator, count: int | None = None):
    """Uniform points on the n-sphere of radius r in R^(n+1).

    Gaussian vectors scaled to norm r; uniform by rotational invariance.
    Returns one vector of length n+1, or a (count, n+1) array.
    """
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n!r}")
    if not r > 0.0:
        raise ValueError(f"radius must be positive, got {r!r}")
    m = 1 if count is None else count
    pts = rng.standard_normal((m, n + 1))
    norms = np.linalg.norm(pts, axis=1)
    bad = norms == 0.0  # probability-zero degenerate draw
    while np.any(bad):
        pts[bad] = rng.standard_normal((int(bad.sum()), n + 1))
        norms = np.linalg.norm(pts, axis=1)
        bad = norms == 0.0
    pts *= (r / norms)[:, None]
    return pts[0] if count is None else pts


def sample_chords_geometric(n: int, r: float, count: int, rng: RngState) -> SampleBatch:
    """Distances between independent uniform point pairs on the sphere."""
    gen = rng.generator()
    p1 = sample_sphere_point(n, r, gen, count)
    p2 = sample_sphere_point(n, r, gen, count)
    values = np.linalg.norm(p1 - p2, axis=1)
    return SampleBatch(n, r, "geometric", rng.seed, rng.stream_id, values)


def sample_chords_beta_transform(n: int, r: float, count: int, rng: RngState) -> SampleBatch:
    """X = 2r sqrt(B) with B ~ Beta(n/2, n/2) built from two Gamma draws."""
    gen = rng.generator()
    g1 = gen.gamma(n / 2.0, size=count)
    g2 = gen.gamma(n / 2.0, size=count)
    b = g1 / (g1 + g2)
    values = 2.0 * r * np.sqrt(b)
    return SampleBatch(n, r, "beta_transform", rng.seed, rng.stream_id, values)


def sample_chords_inverse_cdf(n: int, r: float, count: int, rng: RngState) -> SampleBatch:
    """Quantile transform of uniforms; exercises the inverse incomplete beta.

    The uniforms are processed in sorted order so each Newton solve warm
    starts from the previous root.
    """
    gen = rng.generator()
    u = gen.random(count)
    order = np.argsort(u)
    a = n / 2.0
    z = np.empty(count)
    z_prev = None
    for idx in order:
        z_prev = specfun.inv_reg_inc_beta(float(u[idx]), a, a, z0=z_prev)
        z[idx] = z_prev
    values = 2.0 * r * np.sqrt(z)
    return SampleBatch(n, r, "inverse_cdf", rng.seed, rng.stream_id, values)


_SAMPLER_FUNCS = {
    "geometric": sample_chords_geometric,
    "beta_transform": sample_chords_beta_transform,
    "inverse_cdf": sample_chords_inverse_cdf,
}


def sample_chords(n: int, r: float, count: int, rng: RngState, sampler: str) -> SampleBatch:
    """Dispatch to one of the three chord samplers by name."""
    try:
        func = _SAMPLER_FUNCS[sampler]
    except KeyError:
        raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLER_KINDS}") from None
    return func(n, r, count, rng)


# --------------------------------------------------------------------------
# angular density
# --------------------------------------------------------------------------


def angular_norm(n: int) -> float:
    """Normalizer Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2)) of sin^(n-1).

    Distinct from the mean-to-radius ratio c_n despite the shared symbol in
    common notation.
    """
    if n < 1:
        raise ValueError(f"angular_norm requires n >= 1, got {n!r}")
    return math.exp(
        specfun.ln_gamma((n + 1) / 2.0) - 0.5 * math.log(math.pi) - specfun.ln_gamma(n / 2.0)
    )


def angular_density(n: int, theta):
    """Density of the central angle between two uniform points on S^n.

    f(theta) = angular_norm(n) * sin(theta)^(n-1) on [0, pi].  The chord map
    x = 2r sin(theta/2) pushes it forward to the chord density.
    """
    arr = np.asarray(theta, dtype=float)
    scalar = arr.ndim == 0
    th = np.atleast_1d(arr)
    if np.any((th < 0.0) | (th > math.pi)):
        raise ValueError("theta must lie in [0, pi]")
    out = angular_norm(n) * np.sin(th) ** (n - 1)
    return float(out[0]) if scalar else out


# --------------------------------------------------------------------------
# Kolmogorov-Smirnov
# --------------------------------------------------------------------------

KS_CRITICAL_1PCT = 1.628  # asymptotic Kolmogorov critical value at the 1% level


def ks_statistic_one_sample(values: np.ndarray, cdf) -> float:
    """sup |F_emp - F| against a callable analytic CDF."""
    x = np.sort(np.asarray(values, dtype=float))
    m = x.size
    if m == 0:
        raise ValueError("empty sample")
    f = np.asarray(cdf(x), dtype=float)
    upper = np.arange(1, m + 1) / m - f
    lower = f - np.arange(0, m) / m
    return float(max(upper.max(), lower.max()))


def ks_statistic_two_sample(x: np.ndarray, y: np.ndarray) -> float:
    """sup |F_x - F_y| over the pooled sample."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    if x.size == 0 or y.size == 0:
        raise ValueError("empty sample")
    pooled = np.concatenate([x, y])
    cdf_x = np.searchsorted(x, pooled, side="right") / x.size
    cdf_y = np.searchsorted(y, pooled, side="right") / y.size
    return float(np.abs(cdf_x - cdf_y).max())


def ks_critical_one_sample(count: int, critical: float = KS_CRITICAL_1PCT) -> float:
    return critical / math.sqrt(count)


def ks_critical_two_sample(count_x: int, count_y: int, critical: float = KS_CRITICAL_1PCT) -> float:
    return critical * math.sqrt((count_x + count_y) / (count_x * count_y))


def kolmogorov_sf(lam: float) -> float:
    """Survival function of the Kolmogorov distribution (asymptotic)."""
    if lam <= 0.0:
        return 1.0
    total = 0.0
    sign = 1.0
    for j in range(1, 200):
        term = math.exp(-2.0 * j * j * lam * lam)
        total += sign * term
        if term <= 1e-16 * max(total, 1e-16):
            break
        sign = -sign
    return max(0.0, min(1.0, 2.0 * total))


def ks_p_value_one_sample(values: np.ndarray, cdf) -> float:
    d = ks_statistic_one_sample(values, cdf)
    en = math.sqrt(len(values))
    return kolmogorov_sf((en + 0.12 + 0.11 / en) * d)


def ks_p_value_two_sample(x: np.ndarray, y: np.ndarray) -> float:
    d = ks_statistic_two_sample(x, y)
    en = math.sqrt(x.size * y.size / (x.size + y.size))
    return kolmogorov_sf((en + 0.12 + 0.11 / en) * d)


def batch_distribution(batch: SampleBatch) -> ChordDistribution:
    return ChordDistribution(batch.n, batch.r)


def batch_summary(batch: SampleBatch) -> dict:
    """Empirical moments next to their analytic counterparts."""
    dist = batch_distribution(batch)
    values = batch.values
    mean = float(values.mean())
    std = float(values.std(ddof=1))
    se = std / math.sqrt(batch.count)
    return {
        "count": batch.count,
        "empirical_mean": mean,
        "analytic_mean": dist.mean(),
        "mean_se": se,
        "empirical_median": float(np.median(values)),
        "analytic_median": dist.median(),
        "empirical_second_moment": float(np.mean(values**2)),
        "analytic_second_moment": dist.raw_moment(2),
        "ks_p_value": ks_p_value_one_sample(values, dist.cdf),
    }
