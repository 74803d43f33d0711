"""Orthonormal rotation values and their application."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rbig_kit.config import RotationKind
from rbig_kit.sdk.exceptions import ShapeError
from rbig_kit.sdk.utils import read_only


@dataclass(frozen=True)
class OrthonormalRotation:
    """
    A d×d rotation matrix R with its provenance.

    Rows are the new axes: a column vector x is mapped to R·x.
    """

    matrix: np.ndarray
    provenance: RotationKind
    seed: Optional[int] = None

    def __post_init__(self):
        matrix = read_only(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ShapeError(f"rotation matrix must be square, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "provenance", RotationKind(self.provenance))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def transpose(self) -> "OrthonormalRotation":
        return OrthonormalRotation(self.matrix.T, self.provenance, self.seed)

    def orthonormality_error(self) -> float:
        """Max absolute deviation of RᵀR from the identity."""
        return float(np.max(np.abs(self.matrix.T @ self.matrix - np.eye(self.dim))))

    @classmethod
    def identity(cls, dim: int) -> "OrthonormalRotation":
        return cls(np.eye(dim), RotationKind.PCA)


def apply(r: OrthonormalRotation, x: np.ndarray) -> np.ndarray:
    """
    Rotate a d-vector or every row of an n×d matrix.

    Raises:
        ShapeError: If the trailing dimension does not match the rotation
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim not in (1, 2) or arr.shape[-1] != r.dim:
        raise ShapeError(f"cannot rotate shape {arr.shape} with a {r.dim}x{r.dim} rotation")
    rows = arr.reshape(-1, r.dim)
    # row results must not depend on the batch they arrive in
    out = rows[:, 0:1] * r.matrix[:, 0]
    for j in range(1, r.dim):
        out = out + rows[:, j : j + 1] * r.matrix[:, j]
    return out.reshape(arr.shape)
