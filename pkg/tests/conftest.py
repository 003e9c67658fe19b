# tests/conftest.py
import math

import numpy as np
import pytest

from twolayer.fields import GridSpec, Topology
from twolayer.model import ModelParams


@pytest.fixture
def model():
    return ModelParams(beta=1.0, F=1.0)


@pytest.fixture
def periodic_grid():
    return GridSpec(nx=64, ny=64, Lx=2 * math.pi, Ly=2 * math.pi)


@pytest.fixture
def channel_grid():
    return GridSpec(nx=64, ny=33, Lx=2 * math.pi, Ly=math.pi, topology=Topology.CHANNEL)


@pytest.fixture
def rectangle_grid():
    return GridSpec(nx=33, ny=33, Lx=2 * math.pi, Ly=math.pi, topology=Topology.RECTANGLE, x0=-math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
