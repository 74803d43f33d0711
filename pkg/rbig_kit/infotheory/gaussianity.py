"""
Energy test of multivariate standard normality.

The statistic compares the sample with N(0, I) through expected Euclidean
distances; the acceptance threshold is the (1 − α) quantile of the same
statistic on standard normal samples of equal size, drawn from the
'calibration' seed stream and cached per (n, d, resamples, seed).
"""
import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import special
from scipy.spatial.distance import pdist

from rbig_kit.parallel import map_chunks
from rbig_kit.sdk.exceptions import DataValidationError, InsufficientDataError
from rbig_kit.sdk.models import GaussianityVerdict
from rbig_kit.sdk.utils import as_matrix, stream_rng

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100
ASYMPTOTIC_RADIUS = 20.0


def _gamma_ratio(d: int) -> float:
    """Γ((d + 1) / 2) / Γ(d / 2)."""
    return math.exp(special.gammaln((d + 1) / 2.0) - special.gammaln(d / 2.0))


def expected_distance_to_gaussian(x: np.ndarray) -> np.ndarray:
    """E‖x_i − Z‖ for Z ~ N(0, I_d), one value per row."""
    d = x.shape[1]
    sq = np.sum(x * x, axis=1)
    exact = math.sqrt(2.0) * _gamma_ratio(d) * special.hyp1f1(-0.5, d / 2.0, -0.5 * np.minimum(sq, ASYMPTOTIC_RADIUS ** 2))
    radius = np.sqrt(np.maximum(sq, ASYMPTOTIC_RADIUS ** 2))
    asymptotic = radius + (d - 1) / (2.0 * radius)
    return np.where(sq > ASYMPTOTIC_RADIUS ** 2, asymptotic, exact)


def energy_statistic(data) -> float:
    """
    n·(2·mean E‖x − Z‖ − E‖Z − Z'‖ − mean ‖x_i − x_j‖) against N(0, I).

    Non-negative in expectation and zero only for a standard normal sample.
    """
    x = as_matrix(data)
    n, d = x.shape
    between = float(np.mean(expected_distance_to_gaussian(x)))
    gaussian_pair = 2.0 * _gamma_ratio(d)
    within = 2.0 * float(np.sum(pdist(x))) / (n * n)
    return n * (2.0 * between - gaussian_pair - within)


@lru_cache(maxsize=64)
def _null_statistics(n: int, d: int, resamples: int, seed: int, threads: Optional[int]) -> np.ndarray:
    def one(index: int) -> float:
        return energy_statistic(stream_rng(seed, "calibration", n, d, index).standard_normal((n, d)))

    logger.debug("Calibrating energy test null for n=%d d=%d with %d resamples", n, d, resamples)
    null = np.sort(np.asarray(map_chunks(one, list(range(resamples)), threads=threads)))
    null.setflags(write=False)
    return null


def gaussianity_test(
    data,
    alpha: float = 0.05,
    *,
    resamples: int = 200,
    max_samples: int = 1000,
    seed: int = 0,
    threads: Optional[int] = None,
) -> GaussianityVerdict:
    """
    Test whether data can be a sample of N(0, I).

    Samples larger than max_samples are reduced to a seeded subsample of
    max_samples rows. accept means normality cannot be rejected at alpha.

    Raises:
        InsufficientDataError: If fewer than 100 rows are given
        DataValidationError: If alpha is outside (0, 1)
    """
    x = as_matrix(data)
    n, d = x.shape
    if n < MIN_SAMPLES:
        raise InsufficientDataError(f"gaussianity test needs at least {MIN_SAMPLES} rows, got {n}")
    if not 0.0 < alpha < 1.0:
        raise DataValidationError(f"alpha must lie in (0, 1), got {alpha}")

    if n > max_samples:
        rows = np.sort(stream_rng(seed, "gaussianity-subsample", n).choice(n, max_samples, replace=False))
        x = x[rows]
    m = x.shape[0]

    statistic = energy_statistic(x)
    null = _null_statistics(m, d, int(resamples), int(seed), threads)
    threshold = float(np.quantile(null, 1.0 - alpha))
    return GaussianityVerdict(
        statistic=statistic,
        threshold=threshold,
        accept=statistic <= threshold,
        alpha=alpha,
        n_samples=m,
    )
