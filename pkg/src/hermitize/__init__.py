"""Hermitization toolkit for non-Hermitian Hamiltonians with real spectra.

Three routes to a unitary theory: transform the operator back to Hermitian
form, keep the operator and reweight the inner product with a metric, or
split a factorized map between the two. Includes the metric-family solver,
a split optimizer, and an evolution tracer that witnesses hidden unitarity.
"""

from .errors import (
    CapExceeded,
    ComplexSpectrum,
    DimensionMismatch,
    HermitizeError,
    IllConditionedMap,
    MuOutOfRange,
    NearDefective,
    NotHermitian,
    NotPositiveDefinite,
    NotQuasiHermitian,
    PivotFailure,
    SingularMatrix,
    TargetOutsideFamily,
)
from .linalg import (
    EigenSystem,
    adjoint,
    cholesky,
    eigendecompose,
    eigendecompose_hermitian,
    hermiticity_defect,
    inverse,
    matrix_exp,
    matrix_power,
)
from .hermitization import (
    DysonMap,
    MetricCertificate,
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
from .metric_solver import (
    LeftEigenbasis,
    MetricFamily,
    fit_weights,
    left_eigenbasis,
    metric_from_weights,
    solution_space_dimension,
)
from .hybrid import (
    HybridSplit,
    SplitCost,
    hybrid_hermitize,
    optimize_split,
    power_cost_grid,
    split_cost,
    split_power,
    split_triangular,
)
from .evolution import EvolutionTrace, evolve, expectation_equivalence, propagator
from . import two_level

__version__ = "0.1.0"
