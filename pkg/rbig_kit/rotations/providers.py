"""Rotation providers: PCA and random (Haar) rotations behind one contract."""
import logging
from abc import ABC, abstractmethod
from typing import Dict, Type, Union

import numpy as np

from rbig_kit.config import RotationKind
from rbig_kit.rotations.base import OrthonormalRotation
from rbig_kit.sdk.exceptions import ConfigurationError, InsufficientDataError
from rbig_kit.sdk.utils import as_matrix, stream_int

logger = logging.getLogger(__name__)

RIDGE = 1e-10


def _force_proper(matrix: np.ndarray, flip_axis: int) -> np.ndarray:
    """Flip the sign of the last row (axis 0) or column (axis 1) if det < 0."""
    if np.linalg.det(matrix) < 0:
        matrix = matrix.copy()
        if flip_axis == 0:
            matrix[-1, :] *= -1.0
        else:
            matrix[:, -1] *= -1.0
    return matrix


def pca_rotation(data) -> OrthonormalRotation:
    """
    Rotation onto the covariance eigenvectors, sorted by descending eigenvalue.

    A ridge of 1e-10·trace/d is added to the covariance; a (near) rank
    deficient covariance is reported with a warning and decomposed anyway.
    Each eigenvector is signed so that its largest-magnitude entry is
    positive, then the last row is flipped if needed to make det(R) = +1.

    Raises:
        InsufficientDataError: If n <= d
    """
    x = as_matrix(data)
    n, d = x.shape
    if n <= d:
        raise InsufficientDataError(f"PCA rotation needs more rows than columns, got {n}x{d}")

    centered = x - x.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    scale = float(np.trace(cov)) / d
    cov = cov + RIDGE * scale * np.eye(d)

    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals[0] <= 2.0 * RIDGE * scale:
        logger.warning("Covariance is rank deficient; using the regularized eigenvectors")

    order = np.argsort(-eigvals, kind="stable")
    rows = eigvecs[:, order].T
    pivots = np.argmax(np.abs(rows), axis=1)
    signs = np.sign(rows[np.arange(d), pivots])
    rows = rows * np.where(signs == 0, 1.0, signs)[:, None]
    return OrthonormalRotation(_force_proper(rows, flip_axis=0), RotationKind.PCA)


def random_rotation(d: int, seed: int) -> OrthonormalRotation:
    """
    Haar-distributed random rotation.

    QR of a d×d standard normal matrix with the diagonal of R made positive,
    then a final column flip if needed so that det = +1.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    signs = np.sign(np.diag(r))
    q = q * np.where(signs == 0, 1.0, signs)
    return OrthonormalRotation(_force_proper(q, flip_axis=1), RotationKind.RANDOM, seed=int(seed))


class RotationProvider(ABC):
    """Produces the rotation of one Gaussianization iteration."""

    kind: RotationKind

    @abstractmethod
    def rotation(self, data: np.ndarray, iteration: int, seed: int) -> OrthonormalRotation:
        """Rotation for the marginally Gaussianized iterate of the given iteration."""
        pass


class PcaRotationProvider(RotationProvider):
    """Decorrelating rotation."""

    kind = RotationKind.PCA

    def rotation(self, data: np.ndarray, iteration: int, seed: int) -> OrthonormalRotation:
        return pca_rotation(data)


class RandomRotationProvider(RotationProvider):
    """Random rotation drawn from the 'rotation' seed stream of the iteration."""

    kind = RotationKind.RANDOM

    def rotation(self, data: np.ndarray, iteration: int, seed: int) -> OrthonormalRotation:
        return random_rotation(data.shape[1], stream_int(seed, "rotation", iteration))


class IcaRotationProvider(RotationProvider):
    """Slot for orthonormal ICA rotations; not available in this package."""

    kind = RotationKind.ICA

    def rotation(self, data: np.ndarray, iteration: int, seed: int) -> OrthonormalRotation:
        raise ConfigurationError(ICA_UNAVAILABLE)


ICA_UNAVAILABLE = (
    "rotation 'ica' is not available: ICA rotations cost orders of magnitude more per "
    "iteration than PCA or random rotations; use 'pca' or 'random'"
)

_PROVIDERS: Dict[RotationKind, Type[RotationProvider]] = {
    RotationKind.PCA: PcaRotationProvider,
    RotationKind.RANDOM: RandomRotationProvider,
}


def get_rotation_provider(kind: Union[str, RotationKind]) -> RotationProvider:
    """
    Resolve a rotation provider by kind.

    Raises:
        ConfigurationError: For 'ica' or an unknown kind
    """
    try:
        kind = RotationKind(kind)
    except ValueError as e:
        raise ConfigurationError(f"unknown rotation kind {kind!r}") from e
    if kind is RotationKind.ICA:
        raise ConfigurationError(ICA_UNAVAILABLE)
    return _PROVIDERS[kind]()
