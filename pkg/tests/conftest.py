import random
from fractions import Fraction

import pytest

from kolmconj.trigpoly import COS, SIN, TrigPoly


def random_trigpoly(rng: random.Random, bandwidth: int = 8, max_coeff: int = 10,
                    n_terms: int = 5, parities=(COS, SIN)) -> TrigPoly:
    items = []
    for _ in range(n_terms):
        parity = rng.choice(parities)
        j = rng.randint(-bandwidth, bandwidth)
        k = rng.randint(-bandwidth, bandwidth)
        coeff = Fraction(rng.randint(-max_coeff, max_coeff), rng.randint(1, 4))
        items.append((parity, j, k, coeff))
    return TrigPoly.from_terms(items)


@pytest.fixture
def rng():
    return random.Random(20240817)
