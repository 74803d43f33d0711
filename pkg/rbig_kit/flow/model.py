"""
The fitted Gaussianization transform and its evaluation.

A model is a standardizer followed by layers x ↦ R·Ψ(x). Because every
rotation has |det R| = 1, the log-Jacobian of the whole map is the
standardizer's diagonal term plus the sum of the marginal log-derivatives
of every layer, and log p(x) = log N(G(x); 0, I) + log|det ∇G(x)|.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from rbig_kit.config import FitConfig
from rbig_kit.marginal import MarginalGaussianizer
from rbig_kit.numcore.gaussian import gaussian_logpdf
from rbig_kit.rotations import OrthonormalRotation, apply
from rbig_kit.sdk.exceptions import DegenerateMarginalError, ShapeError
from rbig_kit.sdk.models import FitTrace
from rbig_kit.sdk.utils import as_matrix, read_only, stream_rng


@dataclass(frozen=True)
class Standardizer:
    """Per-dimension affine map (x − mean) / scale applied before layer 0."""

    mean: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", read_only(self.mean))
        object.__setattr__(self, "scale", read_only(self.scale))

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        scale = np.std(x, axis=0)
        for column in range(x.shape[1]):
            if not scale[column] > 0:
                raise DegenerateMarginalError(f"column {column} is constant", column=column)
        return cls(mean=np.mean(x, axis=0), scale=scale)

    @classmethod
    def identity(cls, dim: int) -> "Standardizer":
        return cls(mean=np.zeros(dim), scale=np.ones(dim))

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale

    def invert(self, y: np.ndarray) -> np.ndarray:
        return y * self.scale + self.mean

    @property
    def log_det(self) -> float:
        return float(-np.sum(np.log(self.scale)))


@dataclass(frozen=True)
class RbigLayer:
    """
    One iteration: d marginal Gaussianizers followed by one rotation.

    Attributes:
        marginals: One Gaussianizer per dimension
        rotation: Rotation applied after marginal Gaussianization
        delta_j: Negentropy reduction of this layer in bits (J_m of its input)
        delta_i: Redundancy reduction of this layer in bits
    """

    marginals: Tuple[MarginalGaussianizer, ...]
    rotation: OrthonormalRotation
    delta_j: float
    delta_i: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "marginals", tuple(self.marginals))
        if len(self.marginals) != self.rotation.dim:
            raise ShapeError(
                f"layer has {len(self.marginals)} marginals for a {self.rotation.dim}-d rotation"
            )

    @property
    def dim(self) -> int:
        return self.rotation.dim

    def gaussianize(self, x: np.ndarray) -> np.ndarray:
        """Ψ applied column by column."""
        out = np.empty_like(x)
        for i, marginal in enumerate(self.marginals):
            out[:, i] = marginal.forward(x[:, i])
        return out

    def forward(self, x: np.ndarray) -> np.ndarray:
        return apply(self.rotation, self.gaussianize(x))

    def inverse(self, y: np.ndarray) -> np.ndarray:
        z = apply(self.rotation.transpose(), y)
        out = np.empty_like(z)
        for i, marginal in enumerate(self.marginals):
            out[:, i] = marginal.inverse(z[:, i])
        return out

    def log_det(self, x: np.ndarray) -> np.ndarray:
        total = np.zeros(x.shape[0])
        for i, marginal in enumerate(self.marginals):
            total = total + marginal.log_derivative(x[:, i])
        return total


@dataclass(frozen=True)
class RbigModel:
    """Ordered layer stack with its standardizer, fit configuration and trace."""

    layers: Tuple[RbigLayer, ...]
    dim: int
    standardizer: Standardizer
    config: FitConfig = field(default_factory=FitConfig)
    trace: FitTrace = field(default_factory=FitTrace)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        for layer in self.layers:
            if layer.dim != self.dim:
                raise ShapeError(f"layer of dimension {layer.dim} in a {self.dim}-d model")
        if self.standardizer.mean.shape != (self.dim,):
            raise ShapeError("standardizer does not match the model dimension")

    @property
    def n_layers(self) -> int:
        return len(self.layers)


def transform(model: RbigModel, x) -> np.ndarray:
    """
    Map data to the Gaussian domain: standardizer, then every layer in order.

    Raises:
        ShapeError: On a dimension mismatch
    """
    current = model.standardizer.apply(as_matrix(x, model.dim, name="x"))
    for layer in model.layers:
        current = layer.forward(current)
    return current


def inverse_transform(model: RbigModel, y) -> np.ndarray:
    """
    Map Gaussian-domain points back to the data domain.

    Raises:
        ShapeError: On a dimension mismatch
    """
    current = as_matrix(y, model.dim, name="y")
    for layer in reversed(model.layers):
        current = layer.inverse(current)
    return model.standardizer.invert(current)


def _forward_with_log_det(model: RbigModel, x) -> Tuple[np.ndarray, np.ndarray]:
    """Latent image of x and log|det ∇G(x)|, accumulated in one pass over the layers."""
    current = model.standardizer.apply(as_matrix(x, model.dim, name="x"))
    total = np.full(current.shape[0], model.standardizer.log_det)
    for layer in model.layers:
        total = total + layer.log_det(current)
        current = layer.forward(current)
    return current, total


def log_det_jacobian(model: RbigModel, x) -> np.ndarray:
    """log|det ∇G(x)| per row; rotations contribute nothing."""
    return _forward_with_log_det(model, x)[1]


def log_density(model: RbigModel, x) -> np.ndarray:
    """
    Log-density in nats of each row under the fitted model.

    Always finite: in-support derivatives are floored and outside the
    training support every marginal continues with Gaussian tails.
    """
    latent, log_det = _forward_with_log_det(model, x)
    base = np.zeros(latent.shape[0])
    for i in range(model.dim):
        base = base + gaussian_logpdf(latent[:, i])
    return base + log_det


def mean_log_likelihood(model: RbigModel, x) -> float:
    """Average log-density in nats."""
    return float(np.mean(log_density(model, x)))


def sample(model: RbigModel, n: int, seed: int) -> np.ndarray:
    """Draw n points by inverting N(0, I) draws from the 'sampling' stream."""
    if n < 0:
        raise ValueError(f"sample count must be non-negative, got {n}")
    latent = stream_rng(seed, "sampling").standard_normal((int(n), model.dim))
    return inverse_transform(model, latent)
