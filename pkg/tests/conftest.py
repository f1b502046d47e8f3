import numpy as np
import pytest

from hermitize import DysonMap


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_hermitian(rng, n):
    a = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    return a + a.conj().T


def random_hpd(rng, n):
    a = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    return a.conj().T @ a + np.eye(n)


def random_well_conditioned(rng, n, cond_max=50.0):
    # Rejection sampling keeps the later residual bounds comfortably tight.
    while True:
        a = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
        if np.linalg.cond(a) < cond_max:
            return a


def random_dyson(rng, n, cond_max=50.0):
    return DysonMap.from_matrix(random_well_conditioned(rng, n, cond_max))


def random_real_spectrum_matrix(rng, n, spread=2.0):
    # Diagonalizable with distinct real eigenvalues: V diag(E) V^-1.
    values = np.sort(rng.uniform(-spread, spread, n))
    while np.min(np.diff(values)) < 0.1:
        values = np.sort(rng.uniform(-spread, spread, n))
    v = random_well_conditioned(rng, n, cond_max=20.0)
    return v @ np.diag(values) @ np.linalg.inv(v), values
