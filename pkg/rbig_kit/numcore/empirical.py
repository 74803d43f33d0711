"""Empirical CDF built from a cumulative histogram, with Gaussian tails."""
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special

from rbig_kit.numcore.histogram import Histogram1D, tail_refined_histogram
from rbig_kit.sdk.utils import as_vector, read_only

DEFAULT_CLAMP_EPS = 1e-7


@dataclass(frozen=True)
class EmpiricalCdf:
    """
    Piecewise-linear CDF through the cumulative histogram.

    knots_u runs from eps at support_lo to 1 − eps at support_hi. Past the
    support, the latent map continues linearly with slope 1 / tail_scale,
    i.e. the CDF is a Gaussian tail holding mass eps on each side.
    """

    knots_x: np.ndarray
    knots_u: np.ndarray
    support_lo: float
    support_hi: float
    eps: float
    tail_scale: float

    def __post_init__(self):
        knots_x = read_only(self.knots_x)
        knots_u = read_only(self.knots_u)
        if knots_x.shape != knots_u.shape or knots_x.shape[0] < 2:
            raise ValueError("EmpiricalCdf needs matching knot arrays of length >= 2")
        if not (np.all(np.diff(knots_x) > 0) and np.all(np.diff(knots_u) > 0)):
            raise ValueError("EmpiricalCdf knots must be strictly increasing")
        if not self.tail_scale > 0:
            raise ValueError("EmpiricalCdf tail_scale must be positive")
        object.__setattr__(self, "knots_x", knots_x)
        object.__setattr__(self, "knots_u", knots_u)

    @classmethod
    def from_histogram(cls, hist: Histogram1D, eps: float, tail_scale: float) -> "EmpiricalCdf":
        cumulative = np.concatenate([[0.0], np.cumsum(hist.counts)]) / hist.total
        knots_u = eps + (1.0 - 2.0 * eps) * cumulative
        return cls(
            knots_x=hist.bin_edges,
            knots_u=knots_u,
            support_lo=hist.support_lo,
            support_hi=hist.support_hi,
            eps=float(eps),
            tail_scale=float(tail_scale),
        )

    @property
    def latent_lo(self) -> float:
        return float(special.ndtri(self.knots_u[0]))

    @property
    def latent_hi(self) -> float:
        return float(special.ndtri(self.knots_u[-1]))

    def evaluate(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """CDF value clamped into [eps, 1 − eps]."""
        values = np.interp(np.asarray(x, dtype=np.float64), self.knots_x, self.knots_u)
        return float(values) if np.ndim(x) == 0 else values

    def quantile(self, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Exact inverse of the piecewise-linear CDF; u is clamped into [eps, 1 − eps]."""
        values = np.interp(np.asarray(u, dtype=np.float64), self.knots_u, self.knots_x)
        return float(values) if np.ndim(u) == 0 else values

    def to_latent(self, x: np.ndarray) -> np.ndarray:
        """probit(cdf(x)) on the support, Gaussian-tail extension outside it."""
        x = np.asarray(x, dtype=np.float64)
        z = special.ndtri(np.interp(x, self.knots_x, self.knots_u))
        z = np.where(x < self.support_lo, self.latent_lo + (x - self.support_lo) / self.tail_scale, z)
        z = np.where(x > self.support_hi, self.latent_hi + (x - self.support_hi) / self.tail_scale, z)
        return z

    def from_latent(self, z: np.ndarray) -> np.ndarray:
        """Inverse of to_latent."""
        z = np.asarray(z, dtype=np.float64)
        lo, hi = self.latent_lo, self.latent_hi
        x = np.interp(special.ndtr(z), self.knots_u, self.knots_x)
        x = np.where(z < lo, self.support_lo + (z - lo) * self.tail_scale, x)
        x = np.where(z > hi, self.support_hi + (z - hi) * self.tail_scale, x)
        return x


def build_empirical_cdf(samples, bins: int, eps: float = DEFAULT_CLAMP_EPS) -> EmpiricalCdf:
    """
    Empirical CDF of a sample from a tail-refined equal-count histogram.

    Raises:
        DegenerateMarginalError: If the sample has fewer than two distinct values
    """
    x = as_vector(samples)
    hist = tail_refined_histogram(x, bins)
    return EmpiricalCdf.from_histogram(hist, eps=eps, tail_scale=float(np.std(x)))
