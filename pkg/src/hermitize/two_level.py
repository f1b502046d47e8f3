"""Closed forms for the two-parameter, two-level model that exercises every
route in this package.

The Hermitian reference Hamiltonian is diag(1, 2). The map factors are the
unit triangular matrices

    Omega_M = [[1, 0], [s, 1]],   Omega_H = [[1, t], [0, 1]],

whose product Omega = [[1, t], [s, s t + 1]] has determinant one for all
real (s, t). Everything downstream (the transformed Hamiltonian, the metric,
its spectrum, the half-split pair) has an explicit polynomial form, which
makes this model the golden regression layer for the generic machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermitization import DysonMap, MetricCertificate, certify_metric
from .hybrid import HybridSplit, quasi_hermiticity_residual


@dataclass
class MetricSpectrum:
    """Eigenvalue pair of the full metric with the discriminant of its
    characteristic polynomial."""

    theta_plus: float
    theta_minus: float
    discriminant: float


def hermitian_hamiltonian() -> np.ndarray:
    """The diagonal reference Hamiltonian with spectrum {1, 2}."""
    return np.diag([1.0 + 0j, 2.0 + 0j])


def dyson_factors(s: float, t: float) -> tuple[DysonMap, DysonMap, DysonMap]:
    """Lower factor, upper factor, and their product, each with its exact
    unimodular inverse."""
    lower = DysonMap(np.array([[1, 0], [s, 1]], dtype=complex),
                     np.array([[1, 0], [-s, 1]], dtype=complex))
    upper = DysonMap(np.array([[1, t], [0, 1]], dtype=complex),
                     np.array([[1, -t], [0, 1]], dtype=complex))
    full = DysonMap(np.array([[1, t], [s, s * t + 1]], dtype=complex),
                    np.array([[s * t + 1, -t], [-s, 1]], dtype=complex))
    return lower, upper, full


def hamiltonian(s: float, t: float) -> np.ndarray:
    """Non-Hermitian isospectral partner of diag(1, 2) under the full map."""
    return np.array(
        [[1 - s * t, -(s * t + 1) * t],
         [s, s * t + 2]], dtype=complex)


def metric_matrix(s: float, t: float) -> np.ndarray:
    """Raw closed-form metric; the two off-diagonal expressions coincide."""
    return np.array(
        [[1 + s * s, (1 + s * s) * t + s],
         [t + (t * s + 1) * s, (t + (t * s + 1) * s) * t + t * s + 1]],
        dtype=complex)


def metric(s: float, t: float) -> MetricCertificate:
    """Certified closed-form metric (positivity proved for s, t > 0; the
    certificate checks it numerically either way)."""
    return certify_metric(metric_matrix(s, t))


def y_matrix(s: float, t: float) -> np.ndarray:
    """Closed form of the Hermitian product Theta H."""
    off = t + 2 * t * s * s + 2 * s
    return np.array(
        [[1 + 2 * s * s, off],
         [off, t * t + 2 * t * t * s * s + 4 * t * s + 2]], dtype=complex)


def discriminant(s: float, t: float) -> float:
    """Discriminant of the metric's characteristic polynomial, written as
    the twelve-term expansion."""
    return (2 * t**4 * s**2 + 4 * t**3 * s + 4 * t**3 * s**3 + t**4 * s**4
            + s**4 + t**4 + 4 * s**2 + 8 * t * s + 4 * t**2
            + 10 * t**2 * s**2 + 2 * t**2 * s**4 + 4 * t * s**3)


def discriminant_factored(s: float, t: float) -> float:
    """Same discriminant as a product of two manifestly nonnegative factors,
    which is what makes positivity of the metric immediate."""
    return (4 + t * t * s * s + (s + t) ** 2) * (t * t * s * s + (s + t) ** 2)


def metric_spectrum(s: float, t: float) -> MetricSpectrum:
    """Eigenvalues of the full metric from the closed-form trace and
    discriminant."""
    d = discriminant(s, t)
    half_trace = 0.5 * t * t + 0.5 * t * t * s * s + t * s + 1 + 0.5 * s * s
    root = 0.5 * math.sqrt(d)
    return MetricSpectrum(half_trace + root, half_trace - root, d)


def half_split_hamiltonian(s: float) -> np.ndarray:
    """Hamiltonian after the upper factor alone; t drops out."""
    return np.array([[1, 0], [s, 2]], dtype=complex)


def reduced_metric_matrix(s: float) -> np.ndarray:
    """Reduced metric induced by the lower factor alone."""
    return np.array([[1 + s * s, s], [s, 1]], dtype=complex)


def reduced_metric_eigenvalues(s: float) -> tuple[float, float]:
    """Eigenvalue pair (low, high) of the reduced metric; the trace is
    2 + s^2, which fixes the overall scale."""
    mean = 1 + 0.5 * s * s
    root = math.sqrt(mean * mean - 1.0)
    return mean - root, mean + root


def hybrid_split(s: float, t: float) -> HybridSplit:
    """The closed-form split assembled into the generic container, with
    residuals evaluated numerically."""
    lower, upper, full = dyson_factors(s, t)
    h_h = half_split_hamiltonian(s)
    theta_m = certify_metric(reduced_metric_matrix(s))
    recomposition = float(
        np.linalg.norm(lower.omega @ upper.omega - full.omega)
        / np.linalg.norm(full.omega))
    reduced = quasi_hermiticity_residual(h_h, theta_m)
    return HybridSplit(lower, upper, h_h, theta_m, recomposition, reduced)
