"""Pytest fixtures for integration tests.

These tests reproduce statistical properties of the sampler on full-length
runs and are marked slow.
"""

import pytest

from bpskit.logging import LoggingService


@pytest.fixture(scope="session")
def logger() -> LoggingService:
    """Create a LoggingService instance for integration tests.

    Returns:
        LoggingService instance
    """
    return LoggingService(level="WARNING")
