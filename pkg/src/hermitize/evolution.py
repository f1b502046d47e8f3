"""Schroedinger evolution in the computational space, tracking both the
plain norm and the metric-weighted norm. A quasi-Hermitian generator
conserves the weighted norm even while the plain norm drifts.

Units: hbar = 1; times are dimensionless. Generators are stationary, so
states are propagated spectrally from t = 0 with no step-accumulation error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotQuasiHermitian
from . import linalg
from .hermitization import DysonMap, MetricCertificate, adjoint, hermitize_ot
from .linalg import as_matrix, as_vector

EQUIVALENCE_TOL = 1e-8


@dataclass
class EvolutionTrace:
    """Sampled trajectory: times, state rows, plain squared norms, and
    metric-weighted squared norms."""

    times: np.ndarray
    states: np.ndarray
    aux_norms: np.ndarray
    theta_norms: np.ndarray


def propagator(hamiltonian, t: float) -> np.ndarray:
    """Evolution operator exp(-i t H)."""
    return linalg.matrix_exp(-1j * t * as_matrix(hamiltonian))


def evolve(hamiltonian, theta: MetricCertificate, psi0, t_max: float,
           dt: float) -> EvolutionTrace:
    """Propagate psi0 under H, sampling at t = 0, dt, 2 dt, ... up to t_max.

    Each sample is computed from the t = 0 state with the spectral
    propagator, never by stepping.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_max < dt:
        raise ValueError("t_max must be at least dt")
    m = as_matrix(hamiltonian)
    v0 = as_vector(psi0)
    if m.shape[0] != v0.shape[0] or m.shape[0] != theta.dim:
        raise DimensionMismatch("Hamiltonian, metric, and state dimensions differ")

    es = linalg.eigendecompose(m)
    coeffs = np.linalg.inv(es.right_vectors) @ v0
    steps = int(np.floor(t_max / dt + 1e-9))
    times = np.arange(steps + 1) * dt
    phases = np.exp(-1j * np.outer(times, es.values))
    states = (phases * coeffs) @ es.right_vectors.T
    aux_norms = np.einsum("ki,ki->k", states.conj(), states).real
    theta_norms = np.einsum("ki,ij,kj->k", states.conj(), theta.theta, states).real
    return EvolutionTrace(times, states, aux_norms, theta_norms)


def expectation_equivalence(hamiltonian, dyson_map: DysonMap, psi0,
                            t: float) -> float:
    """Gap between the metric-weighted norm of the state evolved under H and
    the plain norm of the mapped state evolved under the Hermitized operator.

    Both sides are propagated independently; agreement witnesses that the
    two representations carry the same physics.
    """
    m = as_matrix(hamiltonian)
    v0 = as_vector(psi0)
    hermitized, defect = hermitize_ot(m, dyson_map)
    if defect > EQUIVALENCE_TOL:
        raise NotQuasiHermitian(
            f"map does not Hermitize this Hamiltonian (defect {defect:.3e})"
        )
    theta = adjoint(dyson_map.omega) @ dyson_map.omega
    psi_t = linalg.matrix_exp(-1j * t * m) @ v0
    weighted = float(np.vdot(psi_t, theta @ psi_t).real)

    phi_t = linalg.matrix_exp(-1j * t * hermitized) @ (dyson_map.omega @ v0)
    plain = float(np.vdot(phi_t, phi_t).real)
    return abs(weighted - plain)
