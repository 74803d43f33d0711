"""Gaussianization flow: fitting, transforms and density evaluation."""

from rbig_kit.flow.model import (
    RbigLayer,
    RbigModel,
    Standardizer,
    inverse_transform,
    log_density,
    log_det_jacobian,
    mean_log_likelihood,
    sample,
    transform,
)
from rbig_kit.flow.fit import fit

__all__ = [
    "RbigLayer",
    "RbigModel",
    "Standardizer",
    "fit",
    "transform",
    "inverse_transform",
    "log_det_jacobian",
    "log_density",
    "mean_log_likelihood",
    "sample",
]
