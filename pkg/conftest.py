import numpy as np
import pytest

from polycore import parse_polynomial


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def poly():
    """Parse helper: poly("x1^2 - x2", 2)"""
    def build(text, dimension=None):
        return parse_polynomial(text, dimension)
    return build
