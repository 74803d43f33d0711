"""
Iterative fitting of the Gaussianization transform.

Each iteration measures the marginal negentropy J_m of the current iterate
and tests it for joint normality. The fit stops once J_m is below the
tolerance and the test accepts; otherwise it appends a layer (marginal
Gaussianization followed by a rotation) and continues.
"""
import logging
import time
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from rbig_kit.config import FitConfig, RotationKind
from rbig_kit.flow.model import RbigLayer, RbigModel, Standardizer
from rbig_kit.infotheory.gaussianity import gaussianity_test
from rbig_kit.infotheory.negentropy import total_marginal_negentropy
from rbig_kit.marginal import fit_marginal
from rbig_kit.rotations import OrthonormalRotation, RotationProvider, apply, get_rotation_provider, random_rotation
from rbig_kit.sdk.exceptions import DegenerateMarginalError, InsufficientDataError
from rbig_kit.sdk.models import FitTrace, FitTraceRecord, GaussianityVerdict
from rbig_kit.sdk.utils import as_matrix, stream_int

logger = logging.getLogger(__name__)

MIN_ROWS_PER_DIM = 10
MIN_ROWS = 100
SAFETY_LAYERS = 2
DECORRELATED_Z = 4.0


class _Fitter:
    """State of one fit: configuration, provider and the running iterate."""

    def __init__(self, config: FitConfig, provider: RotationProvider, dim: int, threads: Optional[int]):
        self.config = config
        self.provider = provider
        self.dim = dim
        self.threads = threads
        self.tolerance = config.tolerance_for(dim)

    def marginal_negentropy(self, x: np.ndarray) -> float:
        return total_marginal_negentropy(
            x,
            policy=self.config.bins,
            standardize=False,
            bias_correction=self.config.negentropy_bias_correction,
        )

    def gaussianity(self, x: np.ndarray) -> GaussianityVerdict:
        return gaussianity_test(
            x,
            self.config.gaussianity_alpha,
            resamples=self.config.gaussianity_resamples,
            max_samples=self.config.gaussianity_max_samples,
            seed=self.config.seed,
            threads=self.threads,
        )

    def fit_layer(
        self, x: np.ndarray, jm_bits: float, rotation_of
    ) -> Tuple[RbigLayer, np.ndarray, float]:
        """Fit Ψ on x, rotate, and return the layer, its output and J_m of the output."""
        marginals = []
        for column in range(x.shape[1]):
            try:
                marginals.append(fit_marginal(x[:, column], self.config.bins))
            except DegenerateMarginalError as e:
                raise DegenerateMarginalError(f"column {column} is constant", column=column) from e

        gaussianized = np.empty_like(x)
        for column, marginal in enumerate(marginals):
            gaussianized[:, column] = marginal.forward(x[:, column])

        rotation: OrthonormalRotation = rotation_of(gaussianized)
        rotated = apply(rotation, gaussianized)
        jm_after = self.marginal_negentropy(rotated)
        delta_i = jm_after - self.marginal_negentropy(gaussianized)
        layer = RbigLayer(marginals=tuple(marginals), rotation=rotation, delta_j=jm_bits, delta_i=delta_i)
        return layer, rotated, jm_after

    def decorrelated(self, x: np.ndarray) -> bool:
        """True when no pairwise correlation stands out from sampling noise, so PCA has nothing to rotate."""
        corr = np.corrcoef(x, rowvar=False)
        off_diagonal = corr[~np.eye(self.dim, dtype=bool)]
        return bool(np.max(np.abs(off_diagonal)) * np.sqrt(x.shape[0]) <= DECORRELATED_Z)

    def random_rotation_of(self, stream: str, *indices: int):
        def build(x: np.ndarray) -> OrthonormalRotation:
            return random_rotation(x.shape[1], stream_int(self.config.seed, stream, *indices))

        return build

    def safety_check(self, x: np.ndarray, jm_bits: float, iteration: int) -> bool:
        """Confirm a PCA stop: two trial random-rotation layers must both stay below tolerance."""
        current, jm = x, jm_bits
        for trial in range(SAFETY_LAYERS):
            _, current, jm = self.fit_layer(current, jm, self.random_rotation_of("safety", iteration, trial))
            if jm >= self.tolerance:
                logger.info(
                    "PCA stop at iteration %d rejected: trial random layer %d reached J_m=%.5f bits",
                    iteration,
                    trial,
                    jm,
                )
                return False
        return True


def fit(data, config: Optional[FitConfig] = None, *, threads: Optional[int] = None) -> RbigModel:
    """
    Fit a Gaussianization transform to samples.

    Args:
        data: n×d finite samples, n >= max(10·d, 100)
        config: Fit configuration (defaults to FitConfig())
        threads: Worker cap for the normality calibration

    Returns:
        Fitted RbigModel with its trace

    Raises:
        ConfigurationError: For rotation 'ica'
        InsufficientDataError: If there are too few rows
        DegenerateMarginalError: If a column is constant
    """
    config = config or FitConfig()
    provider = get_rotation_provider(config.rotation_kind)
    x = as_matrix(data)
    n, d = x.shape
    required = max(MIN_ROWS_PER_DIM * d, MIN_ROWS)
    if n < required:
        raise InsufficientDataError(f"fitting {d}-d data needs at least {required} rows, got {n}")

    standardizer = Standardizer.fit(x)
    fitter = _Fitter(config, provider, d, threads)
    use_safety = config.rotation_kind is RotationKind.PCA and config.pca_safety_check
    logger.info(
        "Fitting %d×%d data with %s rotations (tolerance %.4f bits)",
        n,
        d,
        provider.kind.value,
        fitter.tolerance,
    )

    current = standardizer.apply(x)
    jm = fitter.marginal_negentropy(current)
    layers: List[RbigLayer] = []
    records: List[FitTraceRecord] = []
    cumulative = 0.0
    forced_random = 0
    converged = False
    stop_reason = "max_iterations"

    for iteration in range(config.max_iterations + 1):
        started = time.perf_counter()
        verdict = fitter.gaussianity(current)
        cumulative += jm

        if jm < fitter.tolerance:
            if verdict.accept and (not use_safety or fitter.safety_check(current, jm, iteration)):
                converged, stop_reason = True, "converged"
            elif config.rotation_kind is RotationKind.PCA and not forced_random and fitter.decorrelated(current):
                # Gaussian, uncorrelated marginals with a non-Gaussian joint: PCA would stall
                forced_random = SAFETY_LAYERS

        if converged or iteration == config.max_iterations:
            records.append(
                FitTraceRecord(
                    iteration=iteration,
                    jm_bits=jm,
                    cumulative_dj_bits=cumulative,
                    gauss_stat=verdict.statistic,
                    gauss_threshold=verdict.threshold,
                    gauss_accept=verdict.accept,
                    wall_time_s=time.perf_counter() - started,
                )
            )
            break

        if forced_random:
            rotation_of = fitter.random_rotation_of("rotation", iteration)
            kind = RotationKind.RANDOM
            forced_random -= 1
        else:
            rotation_of = partial(provider.rotation, iteration=iteration, seed=config.seed)
            kind = provider.kind

        layer, current, next_jm = fitter.fit_layer(current, jm, rotation_of)
        layers.append(layer)
        records.append(
            FitTraceRecord(
                iteration=iteration,
                jm_bits=jm,
                cumulative_dj_bits=cumulative,
                delta_i_bits=layer.delta_i,
                gauss_stat=verdict.statistic,
                gauss_threshold=verdict.threshold,
                gauss_accept=verdict.accept,
                rotation=kind.value,
                wall_time_s=time.perf_counter() - started,
            )
        )
        logger.debug(
            "Iteration %d: J_m=%.5f bits, cumulative ΔJ=%.5f bits, ΔI=%.5f bits, normality %s (%.3fs)",
            iteration,
            jm,
            cumulative,
            layer.delta_i,
            "accepted" if verdict.accept else "rejected",
            records[-1].wall_time_s,
        )
        jm = next_jm

    if converged:
        logger.info("Converged after %d layers; cumulative ΔJ=%.4f bits", len(layers), cumulative)
    else:
        logger.warning(
            "Stopped at max_iterations=%d without convergence (J_m=%.5f bits)",
            config.max_iterations,
            jm,
        )

    trace = FitTrace(records=records, converged=converged, stop_reason=stop_reason)
    return RbigModel(layers=tuple(layers), dim=d, standardizer=standardizer, config=config, trace=trace)
