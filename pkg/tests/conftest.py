import numpy as np
import pytest

from discordlab.config import Config
from discordlab.models.state import DensityMatrix, WernerParams
from discordlab.services.state_service import StateService


@pytest.fixture(autouse=True)
def restore_config():
    """Commands write global flags into Config; undo that after every test"""
    saved = {k: v for k, v in vars(Config).items() if k.isupper()}
    yield
    for key, value in saved.items():
        setattr(Config, key, value)


@pytest.fixture
def bell():
    return StateService.max_entangled(2)


@pytest.fixture
def werner_2x32():
    return StateService.werner(WernerParams(m=8, z=-1.0)).with_dims((2, 32))


@pytest.fixture
def maximally_mixed():
    return DensityMatrix.from_array(np.eye(4) / 4, (2, 2))


@pytest.fixture
def cq():
    blocks = [np.diag([0.7, 0.3]), np.array([[0.5, 0.25j], [-0.25j, 0.5]])]
    return StateService.cq_state([0.4, 0.6], blocks)


def random_states(dims, count, seed=0, rank=None):
    """`count` reproducible random states on `dims`"""
    return [
        StateService.random_state(dims, rank, np.random.SeedSequence(seed, spawn_key=(i,)))
        for i in range(count)
    ]
