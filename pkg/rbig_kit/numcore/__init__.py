"""Scalar Gaussian numerics and one-dimensional empirical distributions."""

from rbig_kit.numcore.gaussian import (
    gaussian_cdf,
    probit,
    gaussian_logpdf,
    gaussian_bin_mass,
)
from rbig_kit.numcore.histogram import (
    Histogram1D,
    evaluate_pdf,
    equal_width_histogram,
    merge_sparse_tails,
    tail_levels,
    tail_refined_histogram,
)
from rbig_kit.numcore.empirical import EmpiricalCdf, build_empirical_cdf

__all__ = [
    "gaussian_cdf",
    "probit",
    "gaussian_logpdf",
    "gaussian_bin_mass",
    "Histogram1D",
    "evaluate_pdf",
    "equal_width_histogram",
    "merge_sparse_tails",
    "tail_levels",
    "tail_refined_histogram",
    "EmpiricalCdf",
    "build_empirical_cdf",
]
