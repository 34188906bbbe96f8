import numpy as np
import pytest

from zeemansym.so3rep import SpinLabel, spherical_rep


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian(rng, n):
    x = random_complex(rng, n)
    return x + x.conj().T


def rep(l):
    return spherical_rep(SpinLabel.from_l(l))


ALL_TWO_L = list(range(0, 21))  # l = 0, 1/2, ..., 10
