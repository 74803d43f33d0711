"""
Pytest configuration and fixtures for rbig-kit tests.
"""
import logging
import os

import numpy as np
import pytest

from rbig_kit.config import FitConfig


# ============================================================================
# Test Isolation Fixtures - Applied to ALL tests automatically
# ============================================================================

@pytest.fixture(autouse=True)
def isolate_environment_variables():
    """
    Isolate environment variables for each test.

    This prevents RBIG_* settings made by one test from leaking into another.
    """
    original_env = os.environ.copy()

    yield

    for key in set(os.environ.keys()) - set(original_env.keys()):
        os.environ.pop(key, None)
    for key, value in original_env.items():
        os.environ[key] = value


@pytest.fixture(autouse=True)
def reset_config_cache():
    """Drop the cached global AppConfig before and after each test."""
    import rbig_kit.config as config_module

    config_module._config = None
    yield
    config_module._config = None


@pytest.fixture(autouse=True)
def restore_package_logger():
    """
    Undo configure_logging calls made by CLI tests.

    The CLI stops propagation on the package logger, which would hide
    records from caplog in later tests.
    """
    logger = logging.getLogger("rbig_kit")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate

    yield

    logger.handlers = handlers
    logger.setLevel(level)
    logger.propagate = propagate


# ============================================================================
# Pytest Configuration
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "unit: mark test as unit test (fast, small data)"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running (acceptance-level fits)"
    )


# ============================================================================
# Configuration Fixtures
# ============================================================================

@pytest.fixture
def fast_config():
    """Fit configuration with a cheap normality calibration."""
    return FitConfig(gaussianity_resamples=60, seed=11)


# ============================================================================
# Sample Data Fixtures
# ============================================================================

def rotate_45(x: np.ndarray) -> np.ndarray:
    c = np.sqrt(0.5)
    return x @ np.array([[c, -c], [c, c]]).T


def make_gaussian(n: int, d: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal((n, d))


def make_rotated_cube(n: int, seed: int) -> np.ndarray:
    """Uniform square of unit marginal variance, rotated by 45 degrees."""
    u = np.random.default_rng(seed).uniform(-np.sqrt(3.0), np.sqrt(3.0), size=(n, 2))
    return rotate_45(u)


def make_rotated_box(n: int, d: int, seed: int) -> np.ndarray:
    """Uniform box with side lengths growing from 1 to 3, turned by a seeded random rotation."""
    rng = np.random.default_rng(seed)
    half_widths = np.sqrt(3.0) * np.linspace(1.0, 3.0, d)
    u = rng.uniform(-half_widths, half_widths, size=(n, d))
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return u @ (q * np.sign(np.diag(r))).T


def make_ring(n: int, seed: int, radius: float = 1.0, width: float = 0.1) -> np.ndarray:
    rng = np.random.default_rng(seed)
    angle = rng.uniform(0.0, 2.0 * np.pi, n)
    r = radius + width * rng.standard_normal(n)
    return np.column_stack([r * np.cos(angle), r * np.sin(angle)])


def make_two_moons(n: int, seed: int, noise: float = 0.08) -> np.ndarray:
    rng = np.random.default_rng(seed)
    half = n // 2
    t_upper = rng.uniform(0.0, np.pi, half)
    t_lower = rng.uniform(0.0, np.pi, n - half)
    upper = np.column_stack([np.cos(t_upper), np.sin(t_upper)])
    lower = np.column_stack([1.0 - np.cos(t_lower), 0.5 - np.sin(t_lower)])
    return np.vstack([upper, lower]) + noise * rng.standard_normal((n, 2))


def make_correlated_gaussian(n: int, rho: float, seed: int) -> np.ndarray:
    cov = np.array([[1.0, rho], [rho, 1.0]])
    return np.random.default_rng(seed).multivariate_normal(np.zeros(2), cov, size=n)


@pytest.fixture(scope="session")
def gaussian_2d():
    """10,000 draws of N(0, I2)."""
    return make_gaussian(10_000, 2, seed=1)


@pytest.fixture(scope="session")
def small_gaussian_2d():
    """2,000 draws of N(0, I2)."""
    return make_gaussian(2_000, 2, seed=2)


@pytest.fixture(scope="session")
def rotated_cube():
    """10,000 draws of a 45-degree rotated 2D uniform square."""
    return make_rotated_cube(10_000, seed=3)


@pytest.fixture(scope="session")
def ring():
    """4,000 draws of a 2D ring of radius 1."""
    return make_ring(4_000, seed=4)


@pytest.fixture(scope="session")
def two_moons():
    """2,000 draws of the two-moons shape."""
    return make_two_moons(2_000, seed=5)


@pytest.fixture(scope="session")
def gg_pair():
    """10,000 draws of a 2D Gaussian with correlation 0.9231 (1.38 bits of MI)."""
    return make_correlated_gaussian(10_000, 0.9231, seed=6)


@pytest.fixture(scope="session")
def fitted_gaussian(small_gaussian_2d):
    """Model fitted on 2,000 N(0, I2) draws."""
    from rbig_kit.flow import fit

    return fit(small_gaussian_2d, FitConfig(gaussianity_resamples=60, seed=11))


@pytest.fixture(scope="session")
def fitted_cube():
    """Model fitted on 3,000 rotated-square draws."""
    from rbig_kit.flow import fit

    return fit(make_rotated_cube(3_000, seed=7), FitConfig(gaussianity_resamples=60, seed=11))


# ============================================================================
# CLI Fixtures
# ============================================================================

@pytest.fixture
def cli_runner():
    """Click CLI test runner."""
    from click.testing import CliRunner

    return CliRunner()


@pytest.fixture
def csv_file(tmp_path):
    """Write an array to a CSV file and return the path."""

    def _write(values, name="data.csv", header=None):
        path = tmp_path / name
        lines = []
        if header is not None:
            lines.append(",".join(header))
        lines.extend(",".join(repr(float(v)) for v in row) for row in np.atleast_2d(values))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
