import random

import pytest

from fqdiv.algebra import get_field


@pytest.fixture
def F2():
    return get_field(2)


@pytest.fixture
def F3():
    return get_field(3)


@pytest.fixture
def rng():
    return random.Random(12345)
