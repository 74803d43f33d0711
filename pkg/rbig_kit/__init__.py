"""
Package initialization for rbig-kit.

Rotation-based iterative Gaussianization: fit an invertible transform that
maps data to a standard normal, then use it for density evaluation,
sampling, information measures, one-class scoring and denoising.
"""

__version__ = "0.1.0"
__author__ = "rbig-kit Contributors"

from rbig_kit.config import AppConfig, BinPolicy, ConfigManager, FitConfig, RotationKind, get_config
from rbig_kit.flow import (
    RbigModel,
    fit,
    inverse_transform,
    log_density,
    log_det_jacobian,
    mean_log_likelihood,
    sample,
    transform,
)
from rbig_kit.infotheory import gaussianity_test, multi_information, negentropy

__all__ = [
    "AppConfig",
    "BinPolicy",
    "ConfigManager",
    "FitConfig",
    "RotationKind",
    "get_config",
    "RbigModel",
    "fit",
    "transform",
    "inverse_transform",
    "log_density",
    "log_det_jacobian",
    "mean_log_likelihood",
    "sample",
    "gaussianity_test",
    "multi_information",
    "negentropy",
    "__version__",
]
