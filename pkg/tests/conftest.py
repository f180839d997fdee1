import math

import numpy as np
import pytest

from sqgbox import DomainSpec


@pytest.fixture(scope="session")
def square16() -> DomainSpec:
    """Unit-pi square, 16 modes per axis, 32-point grid."""
    return DomainSpec(math.pi, math.pi, 16, 16, 32, 32)


@pytest.fixture(scope="session")
def rect() -> DomainSpec:
    """Anisotropic rectangle to catch axis mixups."""
    return DomainSpec(1.0, 2.0, 6, 10, 20, 28)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(99)
