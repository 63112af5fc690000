import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def rand_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_hermitian(rng, dim):
    a = rand_complex(rng, (dim, dim))
    return (a + a.conj().T) / 2.0


def rand_density(rng, dim):
    a = rand_complex(rng, (dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
