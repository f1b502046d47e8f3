"""Dense complex matrix kernel: adjoints, inverses, eigendecompositions,
Cholesky factors, and matrix functions built on them.

All functions are pure: inputs are never mutated, every result is a fresh
array. Matrices are square ``complex128`` ndarrays throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NearDefective, NotHermitian, NotPositiveDefinite, SingularMatrix

# Floating-point policy. The underlying relations are exact operator
# identities; these floors decide when a double-precision instance has
# drifted too far to honour them.
SINGULARITY_FLOOR = 1e-13
HERMITICITY_TOL = 1e-10
CONDITION_CEILING = 1e8
POSITIVITY_FLOOR = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex matrix, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a) -> np.ndarray:
    """Coerce to a 1-D complex vector, rejecting NaN/Inf entries."""
    v = np.asarray(a, dtype=complex)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def hermiticity_defect(a) -> float:
    """Frobenius norm of A - A^dagger."""
    m = as_matrix(a)
    return float(np.linalg.norm(m - m.conj().T))


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    m = as_matrix(a)
    return hermiticity_defect(m) <= tol * float(np.linalg.norm(m))


def inverse(a, floor: float = SINGULARITY_FLOOR) -> np.ndarray:
    """Matrix inverse, guarded by |det A| > floor * ||A||_F^n.

    Raises:
        SingularMatrix: when the determinant falls below the floor; the
            message carries the |det| estimate.
    """
    m = as_matrix(a)
    n = m.shape[0]
    norm = float(np.linalg.norm(m))
    sign, logabsdet = np.linalg.slogdet(m)
    # Comparison in log space so ||A||^n cannot overflow.
    if norm == 0.0 or sign == 0 or logabsdet <= math.log(floor) + n * math.log(norm):
        det_estimate = 0.0 if sign == 0 else math.exp(logabsdet)
        raise SingularMatrix(
            f"matrix is singular to working precision (|det| ~ {det_estimate:.3e})"
        )
    return np.linalg.inv(m)


@dataclass
class EigenSystem:
    """Spectrum sorted by (real, imaginary) part, with right eigenvectors
    as columns and the condition number of the eigenvector matrix."""

    values: np.ndarray
    right_vectors: np.ndarray
    condition: float


def eigendecompose(a, condition_ceiling: float = CONDITION_CEILING) -> EigenSystem:
    """General eigendecomposition with a defectiveness guard.

    Eigenvalues are sorted by ascending real part, ties by ascending
    imaginary part. Raises NearDefective when the eigenvector matrix
    condition number exceeds `condition_ceiling`.
    """
    m = as_matrix(a)
    values, vectors = np.linalg.eig(m)
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition) or condition > condition_ceiling:
        raise NearDefective(
            f"eigenvector matrix condition {condition:.3e} exceeds ceiling "
            f"{condition_ceiling:.1e}; matrix is numerically defective"
        )
    return EigenSystem(values, vectors, condition)


def eigendecompose_hermitian(a, tol: float = HERMITICITY_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix: real ascending eigenvalues,
    orthonormal eigenvectors."""
    m = as_matrix(a)
    if hermiticity_defect(m) > tol * float(np.linalg.norm(m)):
        raise NotHermitian(
            f"Hermiticity defect {hermiticity_defect(m):.3e} exceeds tolerance"
        )
    values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    return EigenSystem(values, vectors, 1.0)


def cholesky(a, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Lower-triangular L with L L^dagger = A and real positive diagonal.

    Pivots must exceed POSITIVITY_FLOOR * ||A||_F; the first failing pivot
    index is reported in the NotPositiveDefinite error.
    """
    m = as_matrix(a)
    if hermiticity_defect(m) > tol * float(np.linalg.norm(m)):
        raise NotHermitian("Cholesky requires a Hermitian matrix")
    n = m.shape[0]
    pivot_floor = POSITIVITY_FLOOR * float(np.linalg.norm(m))
    low = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i):
            acc = m[i, j] - np.dot(low[i, :j], low[j, :j].conj())
            low[i, j] = acc / low[j, j]
        pivot = m[i, i].real - float(np.real(np.dot(low[i, :i], low[i, :i].conj())))
        if pivot <= pivot_floor:
            raise NotPositiveDefinite(
                f"pivot {pivot:.3e} at index {i} not positive", pivot_index=i
            )
        low[i, i] = math.sqrt(pivot)
    return low


def matrix_power(a, p: float) -> np.ndarray:
    """Real power of a Hermitian positive-definite matrix via its
    eigendecomposition. Power 0 returns the exact identity."""
    m = as_matrix(a)
    n = m.shape[0]
    if p == 0:
        return np.eye(n, dtype=complex)
    es = eigendecompose_hermitian(m)
    floor = POSITIVITY_FLOOR * float(np.linalg.norm(m))
    if es.values[0] <= floor:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {es.values[0]:.3e} not positive", pivot_index=0
        )
    v = es.right_vectors
    return (v * es.values**p) @ v.conj().T


def _exp_by_squaring(m: np.ndarray) -> np.ndarray:
    # Scaled truncated Taylor series; used only as the internal cross-check
    # for the eigendecomposition route.
    n = m.shape[0]
    norm = float(np.linalg.norm(m))
    k = max(0, int(math.ceil(math.log2(max(norm, 1e-300)))) + 1) if norm > 0.5 else 0
    b = m / (2**k)
    term = np.eye(n, dtype=complex)
    total = np.eye(n, dtype=complex)
    for j in range(1, 19):
        term = term @ b / j
        total = total + term
    for _ in range(k):
        total = total @ total
    return total


def matrix_exp(a) -> np.ndarray:
    """Matrix exponential via eigendecomposition, self-checked against a
    scaled Taylor evaluation to 1e-10 relative."""
    m = as_matrix(a)
    es = eigendecompose(m)
    v = es.right_vectors
    result = (v * np.exp(es.values)) @ np.linalg.inv(v)
    reference = _exp_by_squaring(m)
    defect = float(np.linalg.norm(result - reference))
    if defect > 1e-10 * max(float(np.linalg.norm(result)), 1.0):
        raise NearDefective(
            f"eigendecomposition exponential disagrees with series check "
            f"by {defect:.3e}; input too ill-conditioned"
        )
    return result
