import math

import pytest

from rotrepr import Rng, sample_uniform
from rotrepr.convert import quat_to_matrix


@pytest.fixture
def rng():
    return Rng(42)


def haar_quat(rng):
    return sample_uniform(rng)


def haar_matrix(rng):
    return quat_to_matrix(sample_uniform(rng))


def frobenius(r1, r2) -> float:
    s = 0.0
    for i in range(3):
        for j in range(3):
            d = r1.rows[i][j] - r2.rows[i][j]
            s += d * d
    return math.sqrt(s)
