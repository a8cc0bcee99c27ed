import numpy as np
import pytest

from gausspack import DEFAULT_SEED


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED)
