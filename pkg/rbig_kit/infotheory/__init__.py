"""Negentropy, multi-information and normality testing."""

from rbig_kit.infotheory.negentropy import (
    marginal_negentropy,
    marginal_negentropies,
    total_marginal_negentropy,
)
from rbig_kit.infotheory.gaussianity import energy_statistic, gaussianity_test
from rbig_kit.infotheory.multiinfo import multi_information, negentropy

__all__ = [
    "marginal_negentropy",
    "marginal_negentropies",
    "total_marginal_negentropy",
    "energy_statistic",
    "gaussianity_test",
    "multi_information",
    "negentropy",
]
