"""Similarity transforms between a Hermitian operator and its non-Hermitian
isospectral partner, the metric they share, and the metric-weighted inner
product.

Conventions: an invertible map W sends the Hermitian h to H = W^-1 h W and
back; the associated metric is Theta = W^dagger W, and H is Hermitian with
respect to the Theta-weighted inner product <a|Theta|b>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IllConditionedMap,
    NotHermitian,
    NotPositiveDefinite,
    NotQuasiHermitian,
)
from . import linalg
from .linalg import adjoint, as_matrix, as_vector

QUASI_HERMITICITY_TOL = 1e-8


@dataclass
class DysonMap:
    """Invertible, generally non-unitary map with its cached inverse."""

    omega: np.ndarray
    omega_inv: np.ndarray

    def __post_init__(self):
        self.omega = as_matrix(self.omega)
        self.omega_inv = as_matrix(self.omega_inv)
        if self.omega.shape != self.omega_inv.shape:
            raise DimensionMismatch("map and cached inverse differ in shape")
        n = self.omega.shape[0]
        defect = float(np.linalg.norm(self.omega @ self.omega_inv - np.eye(n)))
        scale = float(np.linalg.norm(self.omega)) * float(np.linalg.norm(self.omega_inv))
        if defect > 1e-10 * max(scale, 1.0):
            raise ValueError(
                f"omega_inv is not an inverse of omega (defect {defect:.3e})"
            )

    @classmethod
    def from_matrix(cls, omega) -> "DysonMap":
        m = as_matrix(omega)
        return cls(m, linalg.inverse(m))

    @classmethod
    def identity(cls, dim: int) -> "DysonMap":
        eye = np.eye(dim, dtype=complex)
        return cls(eye, eye.copy())

    @property
    def dim(self) -> int:
        return self.omega.shape[0]


@dataclass
class MetricCertificate:
    """Hermitian positive-definite metric with its positivity evidence:
    a Cholesky factor and the smallest eigenvalue."""

    theta: np.ndarray
    cholesky_factor: np.ndarray
    min_eigenvalue: float

    @property
    def dim(self) -> int:
        return self.theta.shape[0]


def certify_metric(theta) -> MetricCertificate:
    """Check Hermiticity and positive definiteness, returning the certificate.

    Raises:
        NotHermitian: Hermiticity defect above tolerance.
        NotPositiveDefinite: a Cholesky pivot at or below the positivity floor.
    """
    m = as_matrix(theta)
    factor = linalg.cholesky(m)
    smallest = float(linalg.eigendecompose_hermitian(m).values[0])
    if smallest <= 0.0:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {smallest:.3e} not positive", pivot_index=0
        )
    return MetricCertificate(m, factor, smallest)


def metric_from_dyson(dyson_map: DysonMap) -> MetricCertificate:
    """Metric Theta = Omega^dagger Omega induced by an invertible map."""
    theta = adjoint(dyson_map.omega) @ dyson_map.omega
    try:
        return certify_metric(theta)
    except NotPositiveDefinite as exc:
        # Omega invertible guarantees positivity in exact arithmetic, so a
        # Cholesky failure means the map is numerically near-singular.
        raise IllConditionedMap(
            f"map too ill-conditioned for a positive metric: {exc}"
        ) from exc


def de_hermitize(h, dyson_map: DysonMap) -> np.ndarray:
    """Isospectral non-Hermitian partner H = Omega^-1 h Omega of a Hermitian h."""
    m = as_matrix(h)
    if not linalg.is_hermitian(m):
        raise NotHermitian("input Hamiltonian is not Hermitian")
    if m.shape[0] != dyson_map.dim:
        raise DimensionMismatch("Hamiltonian and map dimensions differ")
    return dyson_map.omega_inv @ m @ dyson_map.omega


def hermitize_ot(hamiltonian, dyson_map: DysonMap) -> tuple[np.ndarray, float]:
    """Operator-transformation route: returns Omega H Omega^-1 together with
    its relative Hermiticity defect (reported, never raised)."""
    m = as_matrix(hamiltonian)
    if m.shape[0] != dyson_map.dim:
        raise DimensionMismatch("Hamiltonian and map dimensions differ")
    result = dyson_map.omega @ m @ dyson_map.omega_inv
    norm = float(np.linalg.norm(result))
    defect = linalg.hermiticity_defect(result) / norm if norm > 0 else 0.0
    return result, defect


def _theta_matrix(theta) -> np.ndarray:
    if isinstance(theta, MetricCertificate):
        return theta.theta
    return as_matrix(theta)


def quasi_hermiticity_residual(hamiltonian, theta) -> float:
    """Relative defect ||H^dagger Theta - Theta H||_F / (||H||_F ||Theta||_F);
    zero iff H is Hermitian under the Theta-weighted inner product."""
    m = as_matrix(hamiltonian)
    t = _theta_matrix(theta)
    if m.shape != t.shape:
        raise DimensionMismatch("Hamiltonian and metric dimensions differ")
    denom = float(np.linalg.norm(m)) * float(np.linalg.norm(t))
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(m.conj().T @ t - t @ m)) / denom


def y_product(hamiltonian, metric: MetricCertificate) -> np.ndarray:
    """The Hermitian product Theta H (= H^dagger Theta for a quasi-Hermitian
    pair)."""
    residual = quasi_hermiticity_residual(hamiltonian, metric)
    if residual >= QUASI_HERMITICITY_TOL:
        raise NotQuasiHermitian(
            f"quasi-Hermiticity residual {residual:.3e} exceeds "
            f"{QUASI_HERMITICITY_TOL:.1e}"
        )
    return metric.theta @ as_matrix(hamiltonian)


def physical_inner_product(a, b, metric: MetricCertificate) -> complex:
    """Metric-weighted inner product <a|Theta|b>, antilinear in `a`."""
    va = as_vector(a)
    vb = as_vector(b)
    if va.shape[0] != vb.shape[0] or va.shape[0] != metric.dim:
        raise DimensionMismatch("vector and metric dimensions differ")
    return complex(np.vdot(va, metric.theta @ vb))


def bra_map(psi, metric: MetricCertificate) -> np.ndarray:
    """Components of the metric-amended bra <psi|Theta, so that the plain dot
    product of the result with any ket reproduces physical_inner_product."""
    v = as_vector(psi)
    if v.shape[0] != metric.dim:
        raise DimensionMismatch("vector and metric dimensions differ")
    return v.conj() @ metric.theta


def isospectrality_check(a, b) -> float:
    """Max absolute gap between the sorted spectra of two matrices."""
    ma = as_matrix(a)
    mb = as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch("matrices differ in dimension")
    ea = linalg.eigendecompose(ma).values
    eb = linalg.eigendecompose(mb).values
    return float(np.max(np.abs(ea - eb)))
