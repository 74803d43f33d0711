"""
Posterior-mean denoising under a fitted density prior.

For an observation x_n = x + noise, candidates are drawn from N(x_n, σ_n²I).
With a symmetric Gaussian noise model the proposal cancels the likelihood,
so self-normalized importance weights are the prior densities p(x*).
Weights are formed in log-space after subtracting the row maximum; candidates
with a non-finite log-density are left out.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from rbig_kit.flow import RbigModel, log_density
from rbig_kit.parallel import map_chunks
from rbig_kit.sdk.exceptions import ConfigurationError, DataValidationError, ShapeError
from rbig_kit.sdk.utils import as_matrix, read_only, stream_rng

logger = logging.getLogger(__name__)

DEFAULT_POSTERIOR_SAMPLES = 8000
MIN_POSTERIOR_SAMPLES = 100
ROWS_PER_CHUNK = 16


@dataclass(frozen=True)
class NoiseModel:
    """Additive Gaussian noise with per-dimension standard deviation sigma_n."""

    sigma_n: np.ndarray
    kind: str = "additive-gaussian"

    def __post_init__(self):
        sigma = np.atleast_1d(np.asarray(self.sigma_n, dtype=np.float64))
        if sigma.ndim != 1 or not np.all(np.isfinite(sigma)) or np.any(sigma <= 0):
            raise DataValidationError("sigma_n must be finite and strictly positive")
        if self.kind != "additive-gaussian":
            raise ConfigurationError(f"unsupported noise kind {self.kind!r}")
        object.__setattr__(self, "sigma_n", read_only(sigma))

    @classmethod
    def isotropic(cls, sigma: float, dim: int) -> "NoiseModel":
        return cls(sigma_n=np.full(dim, float(sigma)))

    def for_dim(self, dim: int) -> np.ndarray:
        if self.sigma_n.shape[0] == 1:
            return np.full(dim, self.sigma_n[0])
        if self.sigma_n.shape[0] != dim:
            raise ShapeError(f"noise model has {self.sigma_n.shape[0]} scales for {dim}-d data")
        return np.asarray(self.sigma_n)


@dataclass(frozen=True)
class DenoiseResult:
    """Denoised rows and the mask of rows that fell back to the observation."""

    values: np.ndarray
    fallback: np.ndarray

    @property
    def n_fallback(self) -> int:
        return int(np.count_nonzero(self.fallback))


def _posterior_mean(
    prior: RbigModel, observed: np.ndarray, sigma: np.ndarray, n_posterior: int, seed: int, row: int
) -> Tuple[np.ndarray, bool]:
    rng = stream_rng(seed, "denoise", row)
    candidates = observed + sigma * rng.standard_normal((n_posterior, observed.shape[0]))
    log_weights = log_density(prior, candidates)
    usable = np.isfinite(log_weights)
    if not usable.any():
        return observed.copy(), True
    weights = np.exp(log_weights[usable] - np.max(log_weights[usable]))
    return weights @ candidates[usable] / np.sum(weights), False


def denoise(
    prior: RbigModel,
    noisy,
    noise: Union[NoiseModel, float],
    n_posterior: int = DEFAULT_POSTERIOR_SAMPLES,
    seed: int = 0,
    *,
    threads: Optional[int] = None,
) -> DenoiseResult:
    """
    Self-normalized importance-sampling estimate of E[x | x_n] per row.

    Each row draws its candidates from its own seed stream, so the output
    does not depend on the thread schedule.

    Raises:
        ConfigurationError: If n_posterior < 100
        ShapeError: On a dimension mismatch
    """
    if n_posterior < MIN_POSTERIOR_SAMPLES:
        raise ConfigurationError(
            f"n_posterior must be at least {MIN_POSTERIOR_SAMPLES}, got {n_posterior}"
        )
    x = as_matrix(noisy, prior.dim, name="noisy")
    if not isinstance(noise, NoiseModel):
        noise = NoiseModel.isotropic(noise, prior.dim)
    sigma = noise.for_dim(prior.dim)

    def run(rows: Sequence[int]) -> List[Tuple[np.ndarray, bool]]:
        return [_posterior_mean(prior, x[row], sigma, int(n_posterior), seed, row) for row in rows]

    chunks = [range(start, min(start + ROWS_PER_CHUNK, x.shape[0])) for start in range(0, x.shape[0], ROWS_PER_CHUNK)]
    results = [item for chunk in map_chunks(run, chunks, threads=threads) for item in chunk]

    values = np.empty_like(x)
    fallback = np.zeros(x.shape[0], dtype=bool)
    for row, (value, fell_back) in enumerate(results):
        values[row] = value
        fallback[row] = fell_back
    if fallback.any():
        logger.warning("%d of %d rows kept their noisy value: all weights underflowed", fallback.sum(), x.shape[0])
    return DenoiseResult(values=values, fallback=fallback)
