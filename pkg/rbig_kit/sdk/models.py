"""Report models for rbig-kit."""
from typing import List, Optional

from pydantic import BaseModel, Field


class NegentropyEstimate(BaseModel):
    """Plug-in estimate of the KL divergence of a marginal to N(0, 1)."""

    value: float = Field(description="Estimate in bits")
    n_samples: int
    bins: int
    low_confidence: bool = Field(False, description="Fewer than 500 samples")


class GaussianityVerdict(BaseModel):
    """Outcome of the energy test of multivariate standard normality."""

    statistic: float
    threshold: float
    accept: bool
    alpha: float
    n_samples: int = Field(description="Rows actually used by the statistic")


class FitTraceRecord(BaseModel):
    """Diagnostics of one Gaussianization iteration."""

    iteration: int
    jm_bits: float = Field(description="Marginal negentropy of the iterate, i.e. this layer's ΔJ")
    cumulative_dj_bits: float
    delta_i_bits: Optional[float] = Field(
        None, description="Redundancy reduction of this layer; None when no layer was fitted"
    )
    gauss_stat: float
    gauss_threshold: float
    gauss_accept: bool
    rotation: Optional[str] = None
    wall_time_s: Optional[float] = None


class FitTrace(BaseModel):
    """Per-iteration convergence record of a fit."""

    records: List[FitTraceRecord] = Field(default_factory=list)
    converged: bool = False
    stop_reason: str = ""

    @property
    def cumulative_dj_bits(self) -> float:
        """Cumulative negentropy reduction at the stopping iteration."""
        return self.records[-1].cumulative_dj_bits if self.records else 0.0

    @property
    def iterations(self) -> int:
        """Number of iterations that produced a layer."""
        return sum(1 for record in self.records if record.delta_i_bits is not None)

    def without_timing(self) -> "FitTrace":
        """Copy with wall times cleared, used for byte-reproducible files."""
        return FitTrace(
            records=[record.model_copy(update={"wall_time_s": None}) for record in self.records],
            converged=self.converged,
            stop_reason=self.stop_reason,
        )
