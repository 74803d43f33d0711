"""
Tests for Gaussian numerics, histograms and empirical CDFs.
"""
import math

import numpy as np
import pytest

from rbig_kit.numcore import (
    EmpiricalCdf,
    Histogram1D,
    build_empirical_cdf,
    equal_width_histogram,
    evaluate_pdf,
    gaussian_bin_mass,
    gaussian_cdf,
    gaussian_logpdf,
    merge_sparse_tails,
    probit,
    tail_levels,
    tail_refined_histogram,
)
from rbig_kit.sdk.exceptions import DegenerateMarginalError, DomainError


# ============================================================================
# Gaussian Numerics
# ============================================================================

@pytest.mark.unit
class TestGaussianNumerics:
    """Test scalar standard normal functions."""

    def test_cdf_known_values(self):
        assert gaussian_cdf(0.0) == 0.5
        assert gaussian_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-12)

    def test_cdf_rejects_non_finite(self):
        with pytest.raises(DomainError):
            gaussian_cdf(np.array([0.0, np.nan]))

    def test_probit_inverts_cdf(self):
        x = np.linspace(-6.0, 6.0, 49)
        assert np.max(np.abs(probit(gaussian_cdf(x)) - x)) < 1e-8

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.1, 1.5])
    def test_probit_domain(self, u):
        with pytest.raises(DomainError):
            probit(u)

    def test_probit_of_clamped_endpoints_is_finite(self):
        eps = 1e-7
        assert probit(eps) == pytest.approx(-5.199337582, abs=1e-6)
        assert probit(1.0 - eps) == pytest.approx(5.199337582, abs=1e-6)

    def test_logpdf_at_origin(self):
        assert gaussian_logpdf(0.0) == pytest.approx(-0.5 * math.log(2.0 * math.pi))

    def test_scalar_in_scalar_out(self):
        assert isinstance(gaussian_cdf(0.3), float)
        assert isinstance(gaussian_logpdf(np.float64(0.3)), float)

    def test_bin_mass_sums_to_one(self):
        edges = np.concatenate([[-40.0], np.linspace(-3.0, 3.0, 13), [40.0]])
        assert gaussian_bin_mass(edges).sum() == pytest.approx(1.0, abs=1e-12)

    def test_bin_mass_keeps_far_tail_precision(self):
        mass = gaussian_bin_mass(np.array([9.0, 10.0]))
        assert mass[0] > 0
        assert mass[0] == pytest.approx(gaussian_cdf(-9.0) - gaussian_cdf(-10.0), rel=1e-6)


# ============================================================================
# Histograms
# ============================================================================

@pytest.mark.unit
class TestHistograms:
    """Test histogram construction and density evaluation."""

    def test_histogram_validation(self):
        with pytest.raises(ValueError):
            Histogram1D(bin_edges=np.array([0.0, 1.0]), counts=np.array([1.0, 2.0]), total=3)
        with pytest.raises(ValueError):
            Histogram1D(bin_edges=np.array([1.0, 0.0]), counts=np.array([1.0]), total=1)

    def test_equal_width_counts_every_sample(self):
        x = np.random.default_rng(0).standard_normal(1_000)
        hist = equal_width_histogram(x, 20)
        assert hist.counts.sum() == 1_000
        assert np.allclose(hist.widths, hist.widths[0])

    def test_quantile_bins_are_populated(self):
        x = np.random.default_rng(0).exponential(size=5_000)
        hist = tail_refined_histogram(x, 71)
        assert np.all(hist.counts > 0)
        assert hist.support_lo == x.min()
        assert hist.support_hi == x.max()

    def test_quantile_bins_merge_ties(self):
        x = np.array([0.0] * 50 + [1.0] * 30 + [2.0] * 20)
        hist = tail_refined_histogram(x, 10)
        assert np.all(hist.counts > 0)
        assert hist.counts.sum() == 100

    def test_densities_integrate_to_one(self):
        x = np.random.default_rng(1).uniform(size=2_000)
        hist = tail_refined_histogram(x, 40)
        assert np.sum(hist.densities * hist.widths) == pytest.approx(1.0)

    def test_edge_ties_go_to_lower_bin(self):
        hist = Histogram1D(bin_edges=np.array([0.0, 1.0, 2.0]), counts=np.array([1.0, 3.0]), total=4)
        assert evaluate_pdf(hist, 1.0) == pytest.approx(0.25)
        assert evaluate_pdf(hist, 1.5) == pytest.approx(0.75)

    def test_floor_outside_support(self):
        hist = Histogram1D(bin_edges=np.array([0.0, 1.0, 2.0]), counts=np.array([1.0, 3.0]), total=4)
        values = evaluate_pdf(hist, np.array([-5.0, 10.0]))
        assert np.all(values > 0)
        assert values == pytest.approx(np.full(2, 0.75e-12))

    def test_tail_levels_halve_toward_the_extremes(self):
        levels = tail_levels(100, 10_000)
        assert levels[0] == 0.0 and levels[-1] == 1.0
        assert levels[1] == pytest.approx(0.01 / 64)
        assert np.allclose(levels, 1.0 - levels[::-1])
        assert np.array_equal(tail_levels(100, 150), np.linspace(0.0, 1.0, 101))

    def test_tail_refined_bins_shrink_at_the_extremes(self):
        x = np.random.default_rng(6).standard_normal(10_000)
        hist = tail_refined_histogram(x, 100)
        assert np.all(hist.counts > 0)
        assert hist.counts.sum() == 10_000
        assert hist.counts.shape[0] > 100
        assert hist.counts[0] <= 3 and hist.counts[-1] <= 3
        assert hist.support_lo == x.min() and hist.support_hi == x.max()
        assert np.median(hist.counts) == pytest.approx(100, abs=2)

    def test_merge_sparse_tails(self):
        edges = np.arange(9.0)
        hist = Histogram1D(bin_edges=edges, counts=np.array([1, 0, 2, 10, 10, 3, 1, 1.0]), total=28)
        merged = merge_sparse_tails(hist, 5)
        assert np.array_equal(merged.counts, [13.0, 10.0, 5.0])
        assert np.array_equal(merged.bin_edges, [0.0, 4.0, 5.0, 8.0])
        assert merged.total == 28

    def test_merge_sparse_tails_keeps_dense_histograms(self):
        hist = equal_width_histogram(np.random.default_rng(7).uniform(size=2_000), 10)
        merged = merge_sparse_tails(hist, 5)
        assert np.array_equal(merged.bin_edges, hist.bin_edges)

    def test_merge_sparse_tails_collapses_small_samples(self):
        hist = Histogram1D(bin_edges=np.arange(4.0), counts=np.array([1.0, 1.0, 1.0]), total=3)
        merged = merge_sparse_tails(hist, 5)
        assert np.array_equal(merged.bin_edges, [0.0, 3.0])
        assert np.array_equal(merged.counts, [3.0])

    @pytest.mark.parametrize("builder", [equal_width_histogram, tail_refined_histogram])
    def test_constant_sample_is_degenerate(self, builder):
        with pytest.raises(DegenerateMarginalError):
            builder(np.full(100, 3.0), 10)


# ============================================================================
# Empirical CDF
# ============================================================================

@pytest.mark.unit
class TestEmpiricalCdf:
    """Test the clamped empirical CDF with Gaussian tails."""

    @pytest.fixture
    def cdf(self):
        return build_empirical_cdf(np.random.default_rng(2).standard_normal(10_000), bins=100)

    def test_clamped_range(self, cdf):
        values = cdf.evaluate(np.array([-1e6, cdf.support_lo, 0.0, cdf.support_hi, 1e6]))
        assert values[0] == pytest.approx(1e-7)
        assert values[-1] == pytest.approx(1.0 - 1e-7)
        assert np.all((values >= 1e-7) & (values <= 1.0 - 1e-7))

    def test_median_near_zero(self, cdf):
        assert cdf.evaluate(0.0) == pytest.approx(0.5, abs=0.02)

    def test_quantile_inverts_evaluate(self, cdf):
        x = np.linspace(cdf.support_lo, cdf.support_hi, 101)
        assert np.max(np.abs(cdf.quantile(cdf.evaluate(x)) - x)) < 1e-9

    def test_latent_is_strictly_monotone_past_support(self, cdf):
        x = np.linspace(cdf.support_lo - 5.0, cdf.support_hi + 5.0, 2_001)
        assert np.all(np.diff(cdf.to_latent(x)) > 0)

    def test_tails_of_gaussian_data_stay_gaussian(self, cdf):
        from rbig_kit.infotheory import marginal_negentropy

        x = np.random.default_rng(2).standard_normal(10_000)
        z = probit(cdf.evaluate(x))
        assert marginal_negentropy(z, standardize=False, bias_correction=True).value <= 0.002

    def test_latent_round_trip(self, cdf):
        x = np.linspace(-8.0, 8.0, 161)
        assert np.max(np.abs(cdf.from_latent(cdf.to_latent(x)) - x)) < 1e-6

    def test_knots_validation(self):
        with pytest.raises(ValueError):
            EmpiricalCdf(
                knots_x=np.array([0.0, 1.0]),
                knots_u=np.array([0.5, 0.4]),
                support_lo=0.0,
                support_hi=1.0,
                eps=1e-7,
                tail_scale=1.0,
            )


@pytest.mark.unit
class TestDistributionExamples:
    """Reference values on simulated data."""

    def test_uniform_cdf_is_identity(self):
        cdf = build_empirical_cdf(np.random.default_rng(3).uniform(size=10_000), bins=100)
        x = np.linspace(0.05, 0.95, 91)
        assert np.max(np.abs(cdf.evaluate(x) - x)) <= 0.02

    def test_gaussian_density_at_origin(self):
        hist = tail_refined_histogram(np.random.default_rng(4).standard_normal(10_000), 100)
        assert evaluate_pdf(hist, 0.0) == pytest.approx(0.3989, abs=0.05)

    def test_single_bin_density(self):
        hist = Histogram1D(bin_edges=np.array([2.0, 2.5]), counts=np.array([7.0]), total=7)
        assert evaluate_pdf(hist, 2.2) == pytest.approx(2.0)

    def test_symmetry(self):
        assert gaussian_cdf(-0.7) == pytest.approx(1.0 - gaussian_cdf(0.7), abs=1e-15)
        assert probit(0.975) == pytest.approx(1.959964, abs=1e-5)

    @pytest.mark.parametrize("n,bound", [(1_000, 0.06), (10_000, 0.02)])
    def test_cdf_converges_with_sample_size(self, n, bound):
        from scipy import stats

        x = np.random.default_rng(5).exponential(size=n)
        cdf = build_empirical_cdf(x, bins=max(32, int(np.ceil(np.sqrt(n)))))
        grid = np.linspace(0.01, 5.0, 200)
        assert np.max(np.abs(cdf.evaluate(grid) - stats.expon.cdf(grid))) <= bound
