"""
Shared fixtures for the affine-weyl tests.
Pins the AFFINE_WEYL_* settings the searches read, and provides the HTTP
client, a seeded PCG64 generator and the rank-7 worked involution.
"""

import os

import numpy as np
import pytest
from fastapi.testclient import TestClient


def pytest_configure(config):
    """Search caps and debug mode for every test run."""
    os.environ["AFFINE_WEYL_ENVIRONMENT"] = "development"
    os.environ["AFFINE_WEYL_DEBUG"] = "true"
    os.environ["AFFINE_WEYL_MAX_SECONDS"] = "120"


@pytest.fixture(scope="session")
def test_client():
    """Create a test client for the FastAPI app."""
    from affine_weyl.main import app

    return TestClient(app)


@pytest.fixture
def rng():
    """A seeded generator so sampled tests are repeatable."""
    return np.random.default_rng(7)


@pytest.fixture
def worked_example():
    """The rank-7 involution used throughout the docs."""
    return "(+1 2)^1 (-3 4)^3 (-5)^2 (-6)^4 (+7)^0"


@pytest.fixture
def family():
    """Build a GroupFamily from a short tag and a rank."""
    from affine_weyl.core import GroupFamily

    return GroupFamily.of
