"""Per-dimension Gaussianization maps."""

from rbig_kit.marginal.gaussianizer import (
    MarginalGaussianizer,
    fit_marginal,
    forward,
    inverse,
    log_derivative,
)

__all__ = [
    "MarginalGaussianizer",
    "fit_marginal",
    "forward",
    "inverse",
    "log_derivative",
]
