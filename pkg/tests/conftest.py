"""Shared fixtures for the unit tests."""

from unittest.mock import Mock

import numpy as np
import pytest

from bpskit.logging import LoggingService
from bpskit.sampler import ConstantRefresh, chain_generator
from bpskit.targets import GaussianTarget, GeneralizedGaussianTarget, StudentTTarget


@pytest.fixture
def mock_logger() -> Mock:
    """Create a mock logger for testing."""
    return Mock(spec=LoggingService)


@pytest.fixture
def rng() -> np.random.Generator:
    """Deterministic random stream."""
    return chain_generator(12345)


@pytest.fixture
def gaussian_2d() -> GaussianTarget:
    """Standard Gaussian in two dimensions."""
    return GaussianTarget(2)


@pytest.fixture
def gen_gaussian_2d() -> GeneralizedGaussianTarget:
    """U = |x|^4 in two dimensions."""
    return GeneralizedGaussianTarget(2, 4.0)


@pytest.fixture
def student_t_2d() -> StudentTTarget:
    """Student t with four degrees of freedom in two dimensions."""
    return StudentTTarget(2, 4.0)


@pytest.fixture
def unit_refresh() -> ConstantRefresh:
    """Constant refresh at rate one."""
    return ConstantRefresh(lambda_ref=1.0)
