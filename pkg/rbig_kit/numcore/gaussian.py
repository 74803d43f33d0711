"""Standard normal numerics."""
import math
from typing import Union

import numpy as np
from scipy import special

from rbig_kit.sdk.exceptions import DomainError

ArrayLike = Union[float, np.ndarray]

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _scalar_or_array(value: np.ndarray, like) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(value)
    return value


def gaussian_cdf(x: ArrayLike) -> ArrayLike:
    """
    Standard normal CDF Φ(x).

    Raises:
        DomainError: If any input is non-finite
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError("gaussian_cdf requires finite input")
    return _scalar_or_array(special.ndtr(arr), x)


def probit(u: ArrayLike) -> ArrayLike:
    """
    Inverse of the standard normal CDF.

    Callers clamp into (0, 1) first; the endpoints are not accepted.

    Raises:
        DomainError: If any input is outside the open interval (0, 1)
    """
    arr = np.asarray(u, dtype=np.float64)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError("probit requires 0 < u < 1")
    return _scalar_or_array(special.ndtri(arr), u)


def gaussian_logpdf(x: ArrayLike) -> ArrayLike:
    """Log density of the standard normal."""
    arr = np.asarray(x, dtype=np.float64)
    return _scalar_or_array(-0.5 * arr * arr - LOG_SQRT_2PI, x)


def gaussian_bin_mass(edges: np.ndarray) -> np.ndarray:
    """
    Standard normal probability of each interval between consecutive edges.

    Upper-tail intervals are computed from the survival function so that
    masses far from the origin keep their relative precision.
    """
    edges = np.asarray(edges, dtype=np.float64)
    lo, hi = edges[:-1], edges[1:]
    lower = special.ndtr(hi) - special.ndtr(lo)
    upper = special.ndtr(-lo) - special.ndtr(-hi)
    mass = np.where(lo >= 0.0, upper, lower)
    return np.maximum(mass, np.finfo(np.float64).tiny)
