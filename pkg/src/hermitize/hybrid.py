"""Factorized-map Hermitization: split an invertible map into a
metric-amending factor and an operator-transforming factor, carry the
Hamiltonian halfway, and keep only the reduced metric.

Two split strategies are provided. The triangular strategy factors the map
itself (LDU without pivoting, diagonal absorbed into the lower factor); the
power strategy interpolates through the Hermitian root of the metric,
Omega_M = Theta^(mu/2) and Omega_H = Theta^((1-mu)/2), so mu = 0 is the pure
operator-transformation route and mu = 1 the pure metric-amendment route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MuOutOfRange, NotQuasiHermitian, PivotFailure
from . import linalg
from .hermitization import (
    DysonMap,
    MetricCertificate,
    certify_metric,
    metric_from_dyson,
    quasi_hermiticity_residual,
)
from .linalg import adjoint, as_matrix

GOLDEN_SECTION_WIDTH = 1e-6
GRID_POINTS = 33


@dataclass
class HybridSplit:
    """One realized factorization: the two map factors, the half-transformed
    Hamiltonian, the reduced metric, and the consistency residuals.

    `mu` records the interpolation parameter for power splits and is None
    for triangular ones.
    """

    omega_m: DysonMap
    omega_h: DysonMap
    h_h: np.ndarray
    theta_m: MetricCertificate
    recomposition_residual: float
    reduced_qh_residual: float
    mu: float | None = None


@dataclass
class SplitCost:
    """Weighted complexity proxy: residual non-Hermiticity of the
    half-transformed Hamiltonian plus log10 condition of the reduced metric."""

    non_hermiticity: float
    metric_condition: float
    total: float
    mu: float | None = None


def _relative_norm(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.linalg.norm(b))
    return float(np.linalg.norm(a - b)) / scale if scale > 0 else 0.0


def _assemble(omega_m: DysonMap, omega_h: DysonMap, hamiltonian: np.ndarray,
              omega: np.ndarray, theta_m: MetricCertificate,
              mu: float | None) -> HybridSplit:
    h_h = omega_h.omega @ hamiltonian @ omega_h.omega_inv
    recomposition = _relative_norm(omega_m.omega @ omega_h.omega, omega)
    reduced = quasi_hermiticity_residual(h_h, theta_m)
    return HybridSplit(omega_m, omega_h, h_h, theta_m, recomposition, reduced, mu)


def split_triangular(dyson_map: DysonMap, hamiltonian) -> HybridSplit:
    """Split via LDU without pivoting: Omega_M = L D (lower triangular),
    Omega_H = U (unit upper triangular).

    Raises:
        PivotFailure: a leading principal minor vanishes, so the no-pivot
            factorization does not exist; row swaps would destroy the
            triangular factor shapes.
    """
    omega = dyson_map.omega
    ham = as_matrix(hamiltonian)
    n = omega.shape[0]
    pivot_floor = linalg.SINGULARITY_FLOOR * float(np.linalg.norm(omega))
    upper = omega.copy()
    lower = np.eye(n, dtype=complex)
    for k in range(n):
        pivot = upper[k, k]
        if abs(pivot) <= pivot_floor:
            raise PivotFailure(
                f"zero leading principal minor at index {k}", minor_index=k
            )
        for i in range(k + 1, n):
            lower[i, k] = upper[i, k] / pivot
            upper[i, k:] -= lower[i, k] * upper[k, k:]
            upper[i, k] = 0.0
    diag = np.diag(upper).copy()
    unit_upper = upper / diag[:, None]
    omega_m = DysonMap.from_matrix(lower * diag[None, :])
    omega_h = DysonMap.from_matrix(unit_upper)
    theta_m = metric_from_dyson(omega_m)
    return _assemble(omega_m, omega_h, ham, omega, theta_m, mu=None)


def split_power(hamiltonian, theta: MetricCertificate, mu: float) -> HybridSplit:
    """Split through the Hermitian root of the metric at interpolation
    parameter mu in [0, 1]."""
    if not 0.0 <= mu <= 1.0:
        raise MuOutOfRange(f"mu = {mu} outside [0, 1]")
    ham = as_matrix(hamiltonian)
    residual = quasi_hermiticity_residual(ham, theta)
    if residual >= 1e-8:
        raise NotQuasiHermitian(
            f"Hamiltonian is not quasi-Hermitian for this metric "
            f"(residual {residual:.3e})"
        )
    es = linalg.eigendecompose_hermitian(theta.theta)
    v = es.right_vectors

    def power(p: float) -> np.ndarray:
        if p == 0:
            return np.eye(theta.dim, dtype=complex)
        return (v * es.values**p) @ v.conj().T

    omega_m = DysonMap(power(mu / 2), power(-mu / 2))
    omega_h = DysonMap(power((1 - mu) / 2), power(-(1 - mu) / 2))
    theta_m = certify_metric(adjoint(omega_m.omega) @ omega_m.omega)
    return _assemble(omega_m, omega_h, ham, power(0.5), theta_m, mu=mu)


def hybrid_hermitize(split: HybridSplit) -> tuple[np.ndarray, float]:
    """Finish the split by the operator route: Omega_M H_H Omega_M^-1,
    returned with its relative Hermiticity defect (reported, never raised)."""
    result = split.omega_m.omega @ split.h_h @ split.omega_m.omega_inv
    norm = float(np.linalg.norm(result))
    defect = linalg.hermiticity_defect(result) / norm if norm > 0 else 0.0
    return result, defect


def split_cost(split: HybridSplit, w_h: float, w_m: float) -> SplitCost:
    """Evaluate the complexity proxy with nonnegative weights."""
    if w_h < 0 or w_m < 0:
        raise ValueError("cost weights must be nonnegative")
    norm = float(np.linalg.norm(split.h_h))
    non_hermiticity = linalg.hermiticity_defect(split.h_h) / norm if norm > 0 else 0.0
    eigenvalues = linalg.eigendecompose_hermitian(split.theta_m.theta).values
    condition = float(eigenvalues[-1] / eigenvalues[0])
    total = w_h * non_hermiticity + w_m * math.log10(condition)
    return SplitCost(non_hermiticity, condition, total, mu=split.mu)


def power_cost_grid(hamiltonian, theta: MetricCertificate, w_h: float,
                    w_m: float, points: int = GRID_POINTS) -> list[SplitCost]:
    """Cost of the power split on a uniform mu grid over [0, 1]."""
    grid = np.linspace(0.0, 1.0, points)
    return [split_cost(split_power(hamiltonian, theta, float(mu)), w_h, w_m)
            for mu in grid]


def optimize_split(hamiltonian, theta: MetricCertificate, w_h: float,
                   w_m: float) -> tuple[float, SplitCost]:
    """Minimize the power-split cost over mu: uniform grid scan, then
    golden-section refinement of the bracket around the grid minimum down to
    width 1e-6. Ties break toward smaller mu."""
    ham = as_matrix(hamiltonian)

    def evaluate(mu: float) -> SplitCost:
        return split_cost(split_power(ham, theta, mu), w_h, w_m)

    grid = np.linspace(0.0, 1.0, GRID_POINTS)
    best_mu = 0.0
    best = evaluate(0.0)
    for mu in grid[1:]:
        cost = evaluate(float(mu))
        if cost.total < best.total:
            best_mu, best = float(mu), cost

    index = int(np.argmin(np.abs(grid - best_mu)))
    a = float(grid[max(index - 1, 0)])
    b = float(grid[min(index + 1, GRID_POINTS - 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = evaluate(c)
    fd = evaluate(d)
    while b - a > GOLDEN_SECTION_WIDTH:
        for mu, cost in ((c, fc), (d, fd)):
            if cost.total < best.total or (cost.total == best.total and mu < best_mu):
                best_mu, best = mu, cost
        if fc.total <= fd.total:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = evaluate(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = evaluate(d)
    for mu, cost in ((c, fc), (d, fd)):
        if cost.total < best.total or (cost.total == best.total and mu < best_mu):
            best_mu, best = mu, cost
    return best_mu, best
