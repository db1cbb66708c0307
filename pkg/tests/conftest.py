import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FROZEN_PATH = Path(__file__).parent / "data" / "frozen.json"


@pytest.fixture(scope="session")
def frozen():
    return json.loads(FROZEN_PATH.read_text())


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def sphere_points(rng, n, count):
    X = rng.standard_normal((count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)
