"""Chord-length distribution on n-spheres and its statistical apparatus:
density, distribution and quantile functions, moments, three cross-validating
samplers, Fisher information with Cramer-Rao bounds, a mean-based radius
estimator, and characteristic functions."""

__version__ = "0.1.0"

from .chord import ChordDistribution, ModeResult, c_n
from .geometry import SphereMetrics, argmax_over, surface_area, volume
from .inference import (
    EstimationReport,
    FisherArgmin,
    GapRow,
    crlb,
    detect_saturation,
    estimate_radius,
    estimator_variance_closed,
    fisher_argmin,
    fisher_closed,
    fisher_numeric,
    gap_table,
    replicate_estimates,
)
from .sampling import (
    RngState,
    SampleBatch,
    angular_density,
    angular_norm,
    sample_chords,
    sample_chords_beta_transform,
    sample_chords_geometric,
    sample_chords_inverse_cdf,
    sample_sphere_point,
)
from .charfun import phi_closed_n2, phi_closed_n3, phi_numeric
from .specfun import (
    QuadratureResult,
    QuadratureSpec,
    bessel_j,
    beta,
    integrate,
    inv_reg_inc_beta,
    ln_gamma,
    reg_inc_beta,
    struve_h,
)

__all__ = [
    "ChordDistribution",
    "EstimationReport",
    "FisherArgmin",
    "GapRow",
    "ModeResult",
    "QuadratureResult",
    "QuadratureSpec",
    "RngState",
    "SampleBatch",
    "SphereMetrics",
    "angular_density",
    "angular_norm",
    "argmax_over",
    "bessel_j",
    "beta",
    "c_n",
    "crlb",
    "detect_saturation",
    "estimate_radius",
    "estimator_variance_closed",
    "fisher_argmin",
    "fisher_closed",
    "fisher_numeric",
    "gap_table",
    "integrate",
    "inv_reg_inc_beta",
    "ln_gamma",
    "phi_closed_n2",
    "phi_closed_n3",
    "phi_numeric",
    "reg_inc_beta",
    "replicate_estimates",
    "sample_chords",
    "sample_chords_beta_transform",
    "sample_chords_geometric",
    "sample_chords_inverse_cdf",
    "sample_sphere_point",
    "struve_h",
    "surface_area",
    "volume",
]
