import random

import pytest

from vertexsplit.vertex import Vertex


@pytest.fixture
def T_B():
    return Vertex.monomial(11, (8, 6, 4))


@pytest.fixture
def T_A():
    return Vertex.monomial(11, (7, 4, 3))


@pytest.fixture
def T_cusp():
    return Vertex.monomial(5, (4, 1))


@pytest.fixture
def rng():
    return random.Random(20240611)
