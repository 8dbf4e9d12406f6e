"""Shared fixtures and hypothesis profiles."""

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from nilricci.config import Tolerances

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile(
    "fast", max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240517)


@pytest.fixture
def tolerances() -> Tolerances:
    return Tolerances()


@pytest.fixture(autouse=True)
def _no_tolerance_override(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("TOLERANCE", raising=False)
