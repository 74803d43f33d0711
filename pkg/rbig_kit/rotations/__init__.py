"""Orthonormal rotation providers."""

from rbig_kit.rotations.base import OrthonormalRotation, apply
from rbig_kit.rotations.providers import (
    RotationProvider,
    PcaRotationProvider,
    RandomRotationProvider,
    IcaRotationProvider,
    get_rotation_provider,
    pca_rotation,
    random_rotation,
)

__all__ = [
    "OrthonormalRotation",
    "apply",
    "RotationProvider",
    "PcaRotationProvider",
    "RandomRotationProvider",
    "IcaRotationProvider",
    "get_rotation_provider",
    "pca_rotation",
    "random_rotation",
]
