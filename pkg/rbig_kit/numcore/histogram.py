"""One-dimensional histograms and piecewise-constant densities."""
from dataclasses import dataclass
from typing import Union

import numpy as np

from rbig_kit.sdk.exceptions import DegenerateMarginalError
from rbig_kit.sdk.utils import as_vector, read_only

DEFAULT_DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class Histogram1D:
    """
    Histogram with arbitrary (strictly increasing) bin edges.

    Attributes:
        bin_edges: K + 1 sorted edges
        counts: K non-negative counts
        total: Sum of counts
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    total: int

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=np.float64)
        counts = np.asarray(self.counts, dtype=np.float64)
        if edges.ndim != 1 or edges.shape[0] < 2 or counts.shape[0] != edges.shape[0] - 1:
            raise ValueError("Histogram1D needs K + 1 edges for K counts")
        if not np.all(np.diff(edges) > 0):
            raise ValueError("Histogram1D edges must be strictly increasing")
        if np.any(counts < 0) or int(round(counts.sum())) != int(self.total) or self.total <= 0:
            raise ValueError("Histogram1D counts must be non-negative and sum to total")
        object.__setattr__(self, "bin_edges", read_only(edges))
        object.__setattr__(self, "counts", read_only(counts))
        object.__setattr__(self, "total", int(self.total))

    @property
    def support_lo(self) -> float:
        return float(self.bin_edges[0])

    @property
    def support_hi(self) -> float:
        return float(self.bin_edges[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def densities(self) -> np.ndarray:
        """Per-bin density; integrates to 1 over the bins."""
        return self.counts / (self.total * self.widths)

    def bin_index(self, x: np.ndarray) -> np.ndarray:
        """Bin containing each x; a point on an interior edge belongs to the lower bin."""
        idx = np.searchsorted(self.bin_edges, x, side="left") - 1
        return np.clip(idx, 0, self.counts.shape[0] - 1)


def evaluate_pdf(
    hist: Histogram1D,
    x: Union[float, np.ndarray],
    floor: float = DEFAULT_DENSITY_FLOOR,
) -> Union[float, np.ndarray]:
    """
    Piecewise-constant density of a histogram.

    Values never drop below floor × peak bin density; outside the histogram
    support the floor density is returned.
    """
    arr = np.asarray(x, dtype=np.float64)
    densities = hist.densities
    floor_density = floor * float(densities.max())
    inside = (arr >= hist.support_lo) & (arr <= hist.support_hi)
    values = np.maximum(densities[hist.bin_index(arr)], floor_density)
    values = np.where(inside, values, floor_density)
    if np.ndim(x) == 0:
        return float(values)
    return values


def _check_distinct(sorted_samples: np.ndarray) -> None:
    if sorted_samples.shape[0] < 2 or sorted_samples[0] == sorted_samples[-1]:
        raise DegenerateMarginalError("sample has fewer than two distinct values")


def equal_width_histogram(samples, bins: int) -> Histogram1D:
    """Histogram with bins of equal width spanning [min, max] of the samples."""
    x = np.sort(as_vector(samples))
    _check_distinct(x)
    counts, edges = np.histogram(x, bins=int(bins), range=(x[0], x[-1]))
    return Histogram1D(bin_edges=edges, counts=counts, total=x.shape[0])


def tail_levels(bins: int, n: int) -> np.ndarray:
    """
    Quantile levels of an equal-count grid with geometrically refined tails.

    The outermost body bin on each side is split in halves toward the
    extremes until a bin spans only a couple of samples, so the
    piecewise-linear CDF built on these edges stays accurate in the tails.
    """
    k = int(bins)
    body = np.linspace(0.0, 1.0, k + 1)
    step = 1.0 / k
    tail = []
    while step * (n - 1) >= 2.0:
        step *= 0.5
        tail.append(step)
    tail = np.asarray(tail, dtype=np.float64)
    return np.unique(np.concatenate([body, tail, 1.0 - tail]))


def tail_refined_histogram(samples, bins: int) -> Histogram1D:
    """
    Equal-count histogram with extra quantile edges in both tails.

    The body holds bins of similar counts; toward each extreme the bins
    shrink geometrically down to a couple of samples. Duplicate edges are
    removed and any bin left empty is merged into the following bin, so
    every bin of the result has a positive count.
    """
    x = np.sort(as_vector(samples))
    _check_distinct(x)
    edges = np.unique(np.quantile(x, tail_levels(bins, x.shape[0])))
    counts, edges = np.histogram(x, bins=edges)
    # the first and last bins always hold the extremes
    keep = counts > 0
    edges = np.concatenate([edges[:1], edges[1:][keep]])
    return Histogram1D(bin_edges=edges, counts=counts[keep], total=x.shape[0])


def merge_sparse_tails(hist: Histogram1D, min_count: int) -> Histogram1D:
    """
    Merge the outermost bins on each side until each end bin holds min_count samples.

    Interior bins are left untouched. A histogram with fewer than
    2 × min_count samples collapses to at most two bins.
    """
    counts = np.asarray(hist.counts)
    edges = np.asarray(hist.bin_edges)
    last = counts.shape[0] - 1

    lo, below = 0, counts[0]
    while below < min_count and lo < last:
        lo += 1
        below += counts[lo]
    hi, above = last, counts[last]
    while above < min_count and hi - 1 > lo:
        hi -= 1
        above += counts[hi]

    if lo >= hi:
        return Histogram1D(bin_edges=edges[[0, -1]], counts=np.array([counts.sum()]), total=hist.total)
    new_edges = np.concatenate([edges[:1], edges[lo + 1:hi + 1], edges[-1:]])
    new_counts = np.concatenate([[counts[:lo + 1].sum()], counts[lo + 1:hi], [counts[hi:].sum()]])
    return Histogram1D(bin_edges=new_edges, counts=new_counts, total=hist.total)
