"""
One-class classification by thresholding the fitted log-density.

The acceptance region {x : log p(x) ≥ threshold} follows the shape of the
estimated density, so it need not be convex or ellipsoidal.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rbig_kit.config import FitConfig
from rbig_kit.flow import RbigModel, fit, log_density
from rbig_kit.sdk.exceptions import DataValidationError
from rbig_kit.sdk.utils import as_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OneClassModel:
    """
    Density model with a rejection threshold.

    Attributes:
        density_model: Fitted Gaussianization model of the target class
        log_threshold: Log-density (nats) below which a point is rejected
        nu: Fraction of training points rejected by construction
    """

    density_model: RbigModel
    log_threshold: float
    nu: float

    @property
    def dim(self) -> int:
        return self.density_model.dim


@dataclass(frozen=True)
class OneClassScores:
    """Per-row log-density and the accept decision."""

    log_density: np.ndarray
    accept: np.ndarray

    @property
    def acceptance_rate(self) -> float:
        return float(np.mean(self.accept)) if self.accept.size else 0.0


def _check_nu(nu: float) -> float:
    if not 0.0 < nu < 1.0:
        raise DataValidationError(f"nu must lie in (0, 1), got {nu}")
    return float(nu)


def threshold_for(log_densities: np.ndarray, nu: float) -> float:
    """The nu-quantile of training log-densities: the ⌊nu·n⌋-th smallest value."""
    nu = _check_nu(nu)
    ordered = np.sort(np.asarray(log_densities, dtype=np.float64))
    index = min(int(math.floor(nu * ordered.shape[0])), ordered.shape[0] - 1)
    return float(ordered[index])


def fit_one_class(
    target_data,
    nu: float,
    config: Optional[FitConfig] = None,
    *,
    threads: Optional[int] = None,
) -> OneClassModel:
    """
    Fit a density model to the target class and set its rejection threshold.

    Raises:
        DataValidationError: If nu is outside (0, 1)
    """
    nu = _check_nu(nu)
    x = as_matrix(target_data)
    model = fit(x, config, threads=threads)
    threshold = threshold_for(log_density(model, x), nu)
    logger.info("One-class threshold %.4f nats at nu=%.3f", threshold, nu)
    return OneClassModel(density_model=model, log_threshold=threshold, nu=nu)


def score(m: OneClassModel, x) -> OneClassScores:
    """Score rows: accept iff log_density ≥ log_threshold."""
    values = log_density(m.density_model, x)
    return OneClassScores(log_density=values, accept=values >= m.log_threshold)
