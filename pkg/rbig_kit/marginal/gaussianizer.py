"""
Marginal Gaussianization Ψ = G ∘ U of a single dimension.

U is the empirical CDF of the training sample and G the probit, so the
forward map sends the training marginal to an approximately standard normal
one. The inverse is exact piecewise-linear inversion of the CDF knots and
the log-derivative is log p(x) − log g(Ψ(x)).
"""
import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from rbig_kit.config import BinPolicy
from rbig_kit.numcore import EmpiricalCdf, Histogram1D, evaluate_pdf, tail_refined_histogram
from rbig_kit.numcore.gaussian import gaussian_logpdf
from rbig_kit.sdk.utils import as_vector

logger = logging.getLogger(__name__)

Real = Union[float, np.ndarray]


@dataclass(frozen=True)
class MarginalGaussianizer:
    """
    Monotone map of one coordinate to N(0, 1).

    Attributes:
        cdf: Clamped empirical CDF with Gaussian tails
        pdf: Equal-count histogram the CDF interpolates
        eps: CDF clamp ε_u
        floor: Density floor relative to the peak bin
    """

    cdf: EmpiricalCdf
    pdf: Histogram1D
    eps: float
    floor: float

    @classmethod
    def from_histogram(
        cls, hist: Histogram1D, tail_scale: float, eps: float, floor: float
    ) -> "MarginalGaussianizer":
        cdf = EmpiricalCdf.from_histogram(hist, eps=eps, tail_scale=tail_scale)
        return cls(cdf=cdf, pdf=hist, eps=float(eps), floor=float(floor))

    def forward(self, x: Real) -> Real:
        z = self.cdf.to_latent(x)
        return float(z) if np.ndim(x) == 0 else z

    def inverse(self, y: Real) -> Real:
        x = self.cdf.from_latent(y)
        return float(x) if np.ndim(y) == 0 else x

    def log_derivative(self, x: Real) -> Real:
        arr = np.asarray(x, dtype=np.float64)
        inside = (arr >= self.cdf.support_lo) & (arr <= self.cdf.support_hi)
        density = (1.0 - 2.0 * self.eps) * evaluate_pdf(self.pdf, arr, floor=self.floor)
        in_support = np.log(density) - gaussian_logpdf(self.cdf.to_latent(arr))
        values = np.where(inside, in_support, -np.log(self.cdf.tail_scale))
        return float(values) if np.ndim(x) == 0 else values


def fit_marginal(samples, policy: Optional[BinPolicy] = None) -> MarginalGaussianizer:
    """
    Fit a marginal Gaussianizer from the cumulative histogram of a sample.

    Raises:
        DegenerateMarginalError: If the sample has fewer than two distinct values
    """
    policy = policy or BinPolicy()
    x = as_vector(samples)
    hist = tail_refined_histogram(x, policy.bins_for(x.shape[0]))
    logger.debug("Fitted marginal with %d bins on %d samples", hist.counts.shape[0], x.shape[0])
    return MarginalGaussianizer.from_histogram(
        hist,
        tail_scale=float(np.std(x)),
        eps=policy.clamp_eps,
        floor=policy.density_floor,
    )


def forward(m: MarginalGaussianizer, x: Real) -> Real:
    """Ψ(x): probit of the clamped CDF, extended by the Gaussian tails."""
    return m.forward(x)


def inverse(m: MarginalGaussianizer, y: Real) -> Real:
    """Ψ⁻¹(y)."""
    return m.inverse(y)


def log_derivative(m: MarginalGaussianizer, x: Real) -> Real:
    """log dΨ/dx; finite everywhere thanks to the density floor and tails."""
    return m.log_derivative(x)
