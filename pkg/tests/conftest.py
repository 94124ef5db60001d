from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fnclass import Grid, LabeledSample

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def grid3() -> Grid:
    return Grid(np.array([0.0, 1.0, 2.0]))


@pytest.fixture
def grid_uneven() -> Grid:
    return Grid(np.array([0.0, 0.1, 0.5, 1.2, 2.0]))


def make_sample(values, labels, points=None) -> LabeledSample:
    values = np.asarray(values, dtype=np.float64)
    if points is None:
        points = np.linspace(0.0, 1.0, values.shape[1])
    return LabeledSample(Grid(np.asarray(points, dtype=np.float64)),
                         values, np.asarray(labels))


@pytest.fixture
def sample_factory():
    return make_sample
