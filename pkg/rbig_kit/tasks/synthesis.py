"""Synthesis presets over model sampling."""
from typing import Optional

import numpy as np

from rbig_kit.flow import RbigModel, inverse_transform, sample
from rbig_kit.sdk.exceptions import DataValidationError
from rbig_kit.sdk.utils import stream_rng

MAX_REDRAWS = 1000


def synthesize(model: RbigModel, n: int, seed: int, truncate: Optional[float] = None) -> np.ndarray:
    """
    Draw n synthetic points from the model.

    With truncate, latent coordinates beyond ±truncate are redrawn from the
    same stream, which keeps samples away from the thinly supported tails.

    Raises:
        DataValidationError: If truncate is not positive
    """
    if truncate is None:
        return sample(model, n, seed)
    if not truncate > 0:
        raise DataValidationError(f"truncate must be positive, got {truncate}")

    rng = stream_rng(seed, "sampling")
    latent = rng.standard_normal((int(n), model.dim))
    for _ in range(MAX_REDRAWS):
        outside = np.abs(latent) > truncate
        if not outside.any():
            break
        latent[outside] = rng.standard_normal(int(np.count_nonzero(outside)))
    else:
        latent = np.clip(latent, -truncate, truncate)
    return inverse_transform(model, latent)
