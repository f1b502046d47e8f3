"""Exception types raised by the numerical kernels."""

from __future__ import annotations


class HermitizeError(Exception):
    """Base class for all mathematical failures in this package."""


class SingularMatrix(HermitizeError):
    """Matrix determinant falls below the singularity floor."""


class NearDefective(HermitizeError):
    """Eigenvector matrix too ill-conditioned to trust the eigendecomposition."""


class NotHermitian(HermitizeError):
    """Input violates the Hermiticity precondition."""


class NotPositiveDefinite(HermitizeError):
    """Cholesky pivot at `pivot_index` fell below the positivity floor."""

    def __init__(self, message: str, pivot_index: int | None = None):
        super().__init__(message)
        self.pivot_index = pivot_index


class DimensionMismatch(HermitizeError):
    """Operands have incompatible dimensions."""


class NotQuasiHermitian(HermitizeError):
    """Hamiltonian/metric pair violates the quasi-Hermiticity relation."""


class ComplexSpectrum(HermitizeError):
    """Spectrum has non-negligible imaginary parts; offending values in `eigenvalues`."""

    def __init__(self, message: str, eigenvalues=()):
        super().__init__(message)
        self.eigenvalues = list(eigenvalues)


class CapExceeded(HermitizeError):
    """Problem dimension exceeds the configured cap."""


class TargetOutsideFamily(HermitizeError):
    """Target metric cannot be written as a positive-weight member of the family."""


class PivotFailure(HermitizeError):
    """Leading principal minor at `minor_index` is numerically zero; no-pivot LDU impossible."""

    def __init__(self, message: str, minor_index: int | None = None):
        super().__init__(message)
        self.minor_index = minor_index


class MuOutOfRange(HermitizeError):
    """Interpolation parameter outside [0, 1]."""


class IllConditionedMap(HermitizeError):
    """Dyson map too close to singular to certify its metric."""
