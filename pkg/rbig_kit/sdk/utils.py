"""Utility functions shared across rbig-kit."""
import zlib
from typing import Optional

import numpy as np

from rbig_kit.sdk.exceptions import DataValidationError, ShapeError


def as_matrix(x, dim: Optional[int] = None, name: str = "data") -> np.ndarray:
    """
    Validate and convert input to a finite float64 (n, d) matrix.

    A 1-D input is read as a single row when dim is given and matches its
    length, otherwise as a single column.

    Raises:
        ShapeError: If the array is not 1-D/2-D or the width differs from dim
        DataValidationError: If any entry is non-finite
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        if dim is not None and arr.shape[0] == dim:
            arr = arr.reshape(1, -1)
        else:
            arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be a 1-D or 2-D array, got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise ShapeError(f"{name} has {arr.shape[1]} columns, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise DataValidationError(f"{name} contains non-finite values")
    return arr


def as_vector(x, name: str = "samples") -> np.ndarray:
    """Validate and convert input to a finite float64 1-D array."""
    arr = np.asarray(x, dtype=np.float64).ravel()
    if not np.all(np.isfinite(arr)):
        raise DataValidationError(f"{name} contains non-finite values")
    return arr


def stream_seed(seed: int, stream: str, *indices: int) -> np.random.SeedSequence:
    """
    Seed sequence for a named random sub-stream.

    Every consumer (rotation, sampling, calibration, ...) draws from its own
    stream keyed by name and optional indices, so adding a consumer never
    shifts the numbers another one sees.
    """
    key = (zlib.crc32(stream.encode("utf-8")),) + tuple(int(i) for i in indices)
    return np.random.SeedSequence(entropy=int(seed), spawn_key=key)


def stream_rng(seed: int, stream: str, *indices: int) -> np.random.Generator:
    """Generator for a named random sub-stream."""
    return np.random.default_rng(stream_seed(seed, stream, *indices))


def stream_int(seed: int, stream: str, *indices: int) -> int:
    """Deterministic 32-bit integer seed drawn from a named sub-stream."""
    return int(stream_seed(seed, stream, *indices).generate_state(1, dtype=np.uint32)[0])


def read_only(arr: np.ndarray) -> np.ndarray:
    """Return a C-contiguous float64 copy that cannot be written to."""
    out = np.ascontiguousarray(arr, dtype=np.float64).copy()
    out.setflags(write=False)
    return out
