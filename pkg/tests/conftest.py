import random

import pytest
from hypothesis import strategies as st

from urnlab.rule import Rule


def random_rule(rng: random.Random, k_max: int = 10, k_min: int = 1) -> Rule:
    k = rng.randint(k_min, k_max)
    return Rule(k, tuple(i for i in range(k + 1) if rng.random() < 0.5))


@st.composite
def rules(draw, k_max=10):
    k = draw(st.integers(1, k_max))
    E = draw(st.sets(st.integers(0, k)))
    return Rule(k, tuple(E))


@pytest.fixture
def rng():
    return random.Random(20240611)
