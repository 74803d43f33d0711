"""
Information-theoretic summaries read off a Gaussianization fit.

The cumulative negentropy reduction of a fit is the negentropy J of the
standardized input. Removing the marginal part measured before the first
layer leaves the multi-information I = J − J_m.
"""
import logging
from typing import Optional

from rbig_kit.config import FitConfig

logger = logging.getLogger(__name__)


def _fit_trace(data, config: Optional[FitConfig], threads: Optional[int]):
    from rbig_kit.flow.fit import fit

    trace = fit(data, config, threads=threads).trace
    if not trace.converged:
        logger.warning("Fit did not converge; the estimate is the value at the stopping iteration")
    return trace


def multi_information(data, config: Optional[FitConfig] = None, *, threads: Optional[int] = None) -> float:
    """
    Multi-information of the columns of data, in bits.

    Fits a model and returns the cumulative ΔJ at the stopping iteration
    minus the marginal negentropy of the standardized input.
    """
    trace = _fit_trace(data, config, threads)
    return trace.cumulative_dj_bits - trace.records[0].jm_bits


def negentropy(data, config: Optional[FitConfig] = None, *, threads: Optional[int] = None) -> float:
    """Joint negentropy of the standardized data in bits: the cumulative ΔJ of a fit."""
    return _fit_trace(data, config, threads).cumulative_dj_bits
