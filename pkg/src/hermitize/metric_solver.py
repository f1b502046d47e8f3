"""Inverse problem: given a non-Hermitian Hamiltonian with a real spectrum,
build the family of positive-definite metrics it is quasi-Hermitian against.

Every metric solution of H^dagger Theta = Theta H is a positively weighted
sum of outer products of left eigenvectors of H. The eigenvector scale and
phase are fixed by convention here, so the whole ambiguity of the family
lives in the weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    ComplexSpectrum,
    DimensionMismatch,
    NearDefective,
    TargetOutsideFamily,
)
from . import linalg
from .hermitization import MetricCertificate, certify_metric
from .linalg import adjoint, as_matrix

SPECTRUM_REALITY_TOL = 1e-9
FIT_RESIDUAL_TOL = 1e-8
NULLSPACE_TOL = 1e-10
DIMENSION_CAP = 8


@dataclass
class LeftEigenbasis:
    """Unit-norm left eigenvectors (columns), eigenvalues ascending, each
    column phased so its first nonzero component is real positive."""

    values: np.ndarray
    left_vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.left_vectors.shape[0]


@dataclass
class MetricFamily:
    basis: LeftEigenbasis
    weights: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != (self.basis.dim,):
            raise DimensionMismatch("one weight per basis vector required")
        if not np.all(self.weights > 0):
            raise ValueError("family weights must be strictly positive")


def _require_real_spectrum(values: np.ndarray, scale: float) -> np.ndarray:
    bad = values[np.abs(values.imag) >= SPECTRUM_REALITY_TOL * max(scale, 1e-300)]
    if bad.size:
        raise ComplexSpectrum(
            f"spectrum has non-real eigenvalues: {list(bad)}", eigenvalues=bad
        )
    return values.real.copy()


def left_eigenbasis(hamiltonian) -> LeftEigenbasis:
    """Left eigenvectors of H (eigenvectors of H^dagger), deterministically
    normalized. Requires a real, non-degenerate spectrum."""
    m = as_matrix(hamiltonian)
    scale = float(np.linalg.norm(m))
    es = linalg.eigendecompose(adjoint(m))
    values = _require_real_spectrum(es.values, scale)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = es.right_vectors[:, order].copy()
    gaps = np.diff(values)
    if gaps.size and float(np.min(gaps)) < SPECTRUM_REALITY_TOL * max(scale, 1.0):
        raise NearDefective(
            "degenerate spectrum: metric family parameterization requires "
            "distinct eigenvalues"
        )
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        col /= np.linalg.norm(col)
        lead = np.argmax(np.abs(col) > 1e-12)
        phase = col[lead] / abs(col[lead])
        vectors[:, k] = col / phase
    return LeftEigenbasis(values, vectors)


def metric_from_weights(family: MetricFamily) -> MetricCertificate:
    """Metric Theta = sum_k w_k |L_k><L_k| for positive weights w."""
    v = family.basis.left_vectors
    theta = (v * family.weights) @ v.conj().T
    return certify_metric(theta)


def _hermitian_basis(n: int) -> list[np.ndarray]:
    # Real basis of the n^2-dimensional space of Hermitian n x n matrices.
    basis = []
    for i in range(n):
        b = np.zeros((n, n), dtype=complex)
        b[i, i] = 1.0
        basis.append(b)
    for i in range(n):
        for j in range(i + 1, n):
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = 1.0
            b[j, i] = 1.0
            basis.append(b)
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = 1.0j
            b[j, i] = -1.0j
            basis.append(b)
    return basis


def solution_space_dimension(hamiltonian, cap: int = DIMENSION_CAP) -> int:
    """Real dimension of the space of Hermitian solutions Theta of
    H^dagger Theta = Theta H.

    The constraint is vectorized over a real basis of Hermitian matrices and
    the nullspace measured by SVD with a relative singular-value threshold.
    """
    m = as_matrix(hamiltonian)
    n = m.shape[0]
    if n > cap:
        raise CapExceeded(f"dimension {n} exceeds cap {cap}")
    es = linalg.eigendecompose(m)
    _require_real_spectrum(es.values, float(np.linalg.norm(m)))
    mh = m.conj().T
    columns = []
    for b in _hermitian_basis(n):
        c = (mh @ b - b @ m).ravel()
        columns.append(np.concatenate([c.real, c.imag]))
    system = np.column_stack(columns)
    singular_values = np.linalg.svd(system, compute_uv=False)
    top = float(singular_values[0]) if singular_values.size else 0.0
    rank = int(np.sum(singular_values > NULLSPACE_TOL * top))
    return n * n - rank


def fit_weights(basis: LeftEigenbasis, target: MetricCertificate) -> np.ndarray:
    """Least-squares weights reproducing `target` within the family spanned
    by `basis`.

    Raises:
        TargetOutsideFamily: fit residual above 1e-8 * ||target||_F, or an
            optimal weight is not strictly positive.
    """
    if basis.dim != target.dim:
        raise DimensionMismatch("basis and target dimensions differ")
    v = basis.left_vectors
    columns = []
    for k in range(basis.dim):
        p = np.outer(v[:, k], v[:, k].conj()).ravel()
        columns.append(np.concatenate([p.real, p.imag]))
    design = np.column_stack(columns)
    rhs = np.concatenate([target.theta.ravel().real, target.theta.ravel().imag])
    weights, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    residual = float(np.linalg.norm(design @ weights - rhs))
    if residual > FIT_RESIDUAL_TOL * float(np.linalg.norm(target.theta)):
        raise TargetOutsideFamily(
            f"fit residual {residual:.3e} too large: target is not a metric "
            f"for this Hamiltonian"
        )
    if not np.all(weights > 0):
        raise TargetOutsideFamily(
            "optimal weights are not all positive; target lies outside the "
            "positive-weight family"
        )
    return weights
