"""Shared fixtures: benchmark models and their limit cycles, computed once
per session (cycle finding dominates suite runtime otherwise)."""
import numpy as np
import pytest

from floqnet.limit_cycle import find_limit_cycle
from floqnet.models import linear_rotation_model, repressilator_model, \
    vdp_model


@pytest.fixture(scope="session")
def vdp():
    return vdp_model(1.0)


@pytest.fixture(scope="session")
def repressilator():
    return repressilator_model()


@pytest.fixture(scope="session")
def rotation():
    return linear_rotation_model()


@pytest.fixture(scope="session")
def vdp_cycle(vdp):
    return find_limit_cycle(vdp)


@pytest.fixture(scope="session")
def rep_cycle(repressilator):
    return find_limit_cycle(repressilator)


@pytest.fixture(scope="session")
def rotation_cycle(rotation):
    return find_limit_cycle(rotation)


@pytest.fixture(scope="session")
def fig2_initial():
    return np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])


@pytest.fixture(scope="session")
def fig3_initial():
    return np.array([0.0, 1.0, 0.0, 3.0, 0.0, 5.0,
                     0.0, 7.0, 0.0, 9.0, 0.0, 11.0,
                     0.0, 13.0, 15.0, 17.0, 4.0, 6.0])
