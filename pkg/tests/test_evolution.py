import numpy as np
import pytest

from hermitize import (
    DimensionMismatch,
    DysonMap,
    NotQuasiHermitian,
    certify_metric,
    evolve,
    expectation_equivalence,
    metric_from_dyson,
    propagator,
)
from hermitize import two_level

from conftest import random_dyson, random_hermitian


@pytest.fixture
def model():
    _, _, full = two_level.dyson_factors(1.0, 1.0)
    return full, two_level.hamiltonian(1.0, 1.0), metric_from_dyson(full)


def test_propagator_at_zero_is_identity(model):
    _, ham, _ = model
    assert np.allclose(propagator(ham, 0.0), np.eye(2), atol=1e-14)


def test_propagator_integer_spectrum_period(model):
    _, ham, _ = model
    assert np.allclose(propagator(np.diag([1.0, 2.0]), 2 * np.pi), np.eye(2),
                       atol=1e-12)
    # Spectrum {1, 2} makes 2*pi a full period for the asymmetric model too.
    assert np.allclose(propagator(ham, 2 * np.pi), np.eye(2), atol=1e-8)


def test_propagator_group_property(model):
    _, ham, _ = model
    t1, t2 = 0.37, 1.21
    combined = propagator(ham, t1) @ propagator(ham, t2)
    assert np.allclose(combined, propagator(ham, t1 + t2), atol=1e-9)


def test_evolve_conserves_weighted_norm_not_plain_norm(model):
    _, ham, theta = model
    trace = evolve(ham, theta, np.array([1, 0], dtype=complex), 10.0, 0.1)
    assert trace.times.shape == (101,)
    assert np.all(np.diff(trace.times) > 0)
    assert np.allclose(trace.theta_norms, 2.0, atol=2e-8)
    assert trace.aux_norms.max() - trace.aux_norms.min() > 0.1
    assert trace.aux_norms[0] == pytest.approx(1.0)


def test_evolve_hermitian_identity_case():
    h = random_hermitian(np.random.default_rng(7), 3)
    theta = certify_metric(np.eye(3))
    psi0 = np.array([1, 1j, 0.5]) / np.sqrt(2.25)
    trace = evolve(h, theta, psi0, 5.0, 0.25)
    assert np.ptp(trace.aux_norms) < 1e-10
    assert np.ptp(trace.theta_norms) < 1e-10


def test_evolve_unitary_generator_conserves_plain_norm():
    theta = certify_metric(np.eye(2))
    trace = evolve(np.diag([1.0, 2.0]), theta, np.array([0.6, 0.8j]), 4.0, 0.5)
    assert np.ptp(trace.aux_norms) < 1e-10


def test_evolve_argument_checks(model):
    _, ham, theta = model
    psi0 = np.array([1, 0], dtype=complex)
    with pytest.raises(ValueError):
        evolve(ham, theta, psi0, 10.0, 0.0)
    with pytest.raises(ValueError):
        evolve(ham, theta, psi0, 0.05, 0.1)
    with pytest.raises(DimensionMismatch):
        evolve(ham, theta, np.array([1, 0, 0], dtype=complex), 1.0, 0.1)


def test_theta_norm_drift_over_random_parameters(rng):
    for _ in range(10):
        s, t = rng.uniform(0.01, 2.0, 2)
        _, _, full = two_level.dyson_factors(s, t)
        ham = two_level.hamiltonian(s, t)
        theta = metric_from_dyson(full)
        psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi0 /= np.linalg.norm(psi0)
        trace = evolve(ham, theta, psi0, 10.0, 0.37)
        drift = np.ptp(trace.theta_norms) / trace.theta_norms[0]
        assert drift < 1e-8


def test_expectation_equivalence_examples(model):
    full, ham, _ = model
    psi0 = np.array([1, 0], dtype=complex)
    assert expectation_equivalence(ham, full, psi0, 1.7) < 1e-8
    assert expectation_equivalence(ham, full, psi0, 0.0) < 1e-12
    h = random_hermitian(np.random.default_rng(3), 2)
    assert expectation_equivalence(h, DysonMap.identity(2), psi0, 2.3) < 1e-12


def test_expectation_equivalence_random_compatible_pairs(rng):
    for _ in range(10):
        dmap = random_dyson(rng, 3)
        ham = np.linalg.solve(dmap.omega, random_hermitian(rng, 3)) @ dmap.omega
        psi0 = rng.normal(size=3) + 1j * rng.normal(size=3)
        t = rng.uniform(0, 10)
        scale = np.linalg.norm(dmap.omega @ psi0) ** 2
        assert expectation_equivalence(ham, dmap, psi0, t) < 1e-8 * scale


def test_expectation_equivalence_rejects_incompatible_map(model):
    _, ham, _ = model
    with pytest.raises(NotQuasiHermitian):
        expectation_equivalence(ham, DysonMap.identity(2),
                                np.array([1, 0], dtype=complex), 1.0)
