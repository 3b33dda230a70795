import random

import pytest


@pytest.fixture
def rnd():
    return random.Random(0xC0FFEE)
