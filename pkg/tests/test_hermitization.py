import math

import numpy as np
import pytest

from hermitize import (
    DimensionMismatch,
    DysonMap,
    NotHermitian,
    NotQuasiHermitian,
    bra_map,
    certify_metric,
    de_hermitize,
    hermitize_ot,
    isospectrality_check,
    metric_from_dyson,
    physical_inner_product,
    quasi_hermiticity_residual,
    y_product,
)
from hermitize import two_level

from conftest import random_dyson, random_hermitian


@pytest.fixture
def model():
    _, _, full = two_level.dyson_factors(1.0, 1.0)
    ham = two_level.hamiltonian(1.0, 1.0)
    theta = metric_from_dyson(full)
    return full, ham, theta


def test_dyson_map_allows_non_unitary(model):
    full, _, _ = model
    omega = full.omega
    assert np.linalg.norm(omega.conj().T - full.omega_inv) > 0.5
    assert np.allclose(omega @ full.omega_inv, np.eye(2), atol=1e-14)


def test_dyson_map_rejects_wrong_inverse():
    with pytest.raises(ValueError):
        DysonMap(np.eye(2), 2 * np.eye(2))


def test_metric_from_dyson_flags_near_singular_map():
    from hermitize import IllConditionedMap
    # Invertible enough to build, but Omega^dag Omega dips below the
    # positivity floor.
    squashed = DysonMap.from_matrix(np.diag([1.0, 1e-7]))
    with pytest.raises(IllConditionedMap):
        metric_from_dyson(squashed)


def test_metric_from_dyson_example(model):
    full, _, theta = model
    assert np.allclose(theta.theta, [[2, 3], [3, 5]], atol=1e-14)
    assert np.allclose(theta.cholesky_factor @ theta.cholesky_factor.conj().T,
                       theta.theta, atol=1e-12)
    assert theta.min_eigenvalue > 0
    assert np.allclose(metric_from_dyson(DysonMap.identity(2)).theta, np.eye(2))


def test_de_hermitize_example(model):
    full, ham, _ = model
    result = de_hermitize(np.diag([1.0, 2.0]), full)
    assert np.allclose(result, [[0, -2], [1, 3]], atol=1e-14)
    assert np.allclose(result, ham, atol=1e-14)
    assert np.allclose(de_hermitize(np.diag([1.0, 2.0]), DysonMap.identity(2)),
                       np.diag([1.0, 2.0]))
    assert isospectrality_check(result, np.diag([1.0, 2.0])) < 1e-12


def test_de_hermitize_rejects_non_hermitian(model):
    full, _, _ = model
    with pytest.raises(NotHermitian):
        de_hermitize([[0, 1], [0, 0]], full)


def test_hermitize_ot_example(model):
    full, ham, _ = model
    result, defect = hermitize_ot(ham, full)
    assert np.allclose(result, np.diag([1.0, 2.0]), atol=1e-13)
    assert defect < 1e-13
    same, defect = hermitize_ot(np.diag([1.0, 2.0]), DysonMap.identity(2))
    assert np.array_equal(same, np.diag([1.0 + 0j, 2.0]))
    assert defect == 0.0


def test_hermitize_ot_round_trip(rng):
    for _ in range(25):
        dmap = random_dyson(rng, 3)
        h = random_hermitian(rng, 3)
        back, defect = hermitize_ot(de_hermitize(h, dmap), dmap)
        assert np.linalg.norm(back - h) < 1e-10 * max(np.linalg.norm(h), 1)
        assert defect < 1e-9


def test_quasi_hermiticity_residual_examples(model):
    _, ham, theta = model
    assert quasi_hermiticity_residual(ham, theta) < 1e-14
    assert quasi_hermiticity_residual(np.diag([1.0, 2.0]), np.eye(2)) == 0.0
    # Hand oracle with the identity metric: numerator ||H^dag - H||_F is the
    # norm of [[0,3],[-3,0]], i.e. 3*sqrt(2); denominator sqrt(14)*sqrt(2).
    value = quasi_hermiticity_residual(ham, np.eye(2))
    assert value == pytest.approx(3 / math.sqrt(14), abs=1e-12)


def test_quasi_hermiticity_residual_dimension_check(model):
    _, ham, _ = model
    with pytest.raises(DimensionMismatch):
        quasi_hermiticity_residual(ham, np.eye(3))


def test_de_hermitized_operators_are_quasi_hermitian(rng):
    for _ in range(25):
        dmap = random_dyson(rng, 3)
        h = random_hermitian(rng, 3)
        ham = de_hermitize(h, dmap)
        theta = metric_from_dyson(dmap)
        assert quasi_hermiticity_residual(ham, theta) < 1e-10


def test_y_product_examples(model):
    _, ham, theta = model
    y = y_product(ham, theta)
    assert np.allclose(y, [[3, 5], [5, 9]], atol=1e-13)
    assert np.linalg.norm(y - y.conj().T) < 1e-9 * np.linalg.norm(y)
    identity_metric = certify_metric(np.eye(2))
    assert np.allclose(y_product(np.diag([1.0, 2.0]), identity_metric),
                       np.diag([1.0, 2.0]))


def test_y_product_rejects_bad_pair(model):
    _, ham, _ = model
    with pytest.raises(NotQuasiHermitian):
        y_product(ham, certify_metric(np.eye(2)))


def test_physical_inner_product_examples(model):
    _, _, theta = model
    e0 = np.array([1, 0], dtype=complex)
    e1 = np.array([0, 1], dtype=complex)
    assert physical_inner_product(e0, e0, theta) == pytest.approx(2)
    assert physical_inner_product(e0, e1, theta) == pytest.approx(3)
    identity_metric = certify_metric(np.eye(2))
    a = np.array([1 + 2j, -1j])
    b = np.array([0.5, 1 - 1j])
    assert physical_inner_product(a, b, identity_metric) == pytest.approx(np.vdot(a, b))


def test_physical_inner_product_is_conjugate_symmetric_and_positive(rng, model):
    _, _, theta = model
    for _ in range(20):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        ab = physical_inner_product(a, b, theta)
        ba = physical_inner_product(b, a, theta)
        assert ab == pytest.approx(np.conj(ba))
        aa = physical_inner_product(a, a, theta)
        assert abs(aa.imag) < 1e-12 * abs(aa.real)
        assert aa.real >= theta.min_eigenvalue * np.linalg.norm(a) ** 2 * (1 - 1e-12)


def test_bra_map_examples(model):
    _, _, theta = model
    assert np.allclose(bra_map([1, 0], theta), [2, 3])
    assert np.allclose(bra_map([0, 1], theta), [3, 5])
    identity_metric = certify_metric(np.eye(2))
    psi = np.array([1 + 1j, 2 - 1j])
    assert np.allclose(bra_map(psi, identity_metric), psi.conj())


def test_bra_map_reproduces_inner_product(rng, model):
    _, _, theta = model
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    x = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert np.dot(bra_map(psi, theta), x) == pytest.approx(
        physical_inner_product(psi, x, theta))


def test_isospectrality_check_examples(rng, model):
    _, ham, _ = model
    assert isospectrality_check(ham, ham) == 0.0
    assert isospectrality_check(np.diag([1.0, 2.0]), np.diag([1.0, 3.0])) == pytest.approx(1.0)
    for _ in range(20):
        s, t = rng.uniform(0.01, 2.0, 2)
        gap = isospectrality_check(np.diag([1.0, 2.0]), two_level.hamiltonian(s, t))
        assert gap < 1e-9
