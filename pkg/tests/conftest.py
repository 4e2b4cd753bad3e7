import numpy as np
import pytest

from app.seeders.gallery import GALLERY, gallery_witnesses
from app.witness import builtin


@pytest.fixture(scope="session")
def gallery():
    """(seed, witness) pairs for every gallery entry."""
    return list(zip(GALLERY, gallery_witnesses()))


@pytest.fixture
def pi():
    return builtin("pi")


@pytest.fixture
def log2():
    return builtin("log", [2])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
