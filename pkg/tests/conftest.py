"""Shared fixtures for the test suite."""
from __future__ import annotations

import pytest

from uav_iad import DENSE_URBAN, optimal_elevation_angle


@pytest.fixture(scope="session")
def dense_profile():
    """Coverage profile at the dense-urban defaults (119 dB budget, 120 m cap)."""
    return optimal_elevation_angle(119.0, 120.0, DENSE_URBAN)
