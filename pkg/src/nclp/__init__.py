"""Numerical toolkit for finite-dimensional non-commutative L^p spaces.

Submodules: :mod:`nclp.linalg` for the matrix primitives, :mod:`nclp.spaces`
for weighted norms and the integrability criterion, :mod:`nclp.superop` for
maps on matrix algebras and their isometry structure theory,
:mod:`nclp.classical` for finite point dynamics, and :mod:`nclp.mpc` for the
truncated shift model with its intertwined Markov semigroup.
"""

from .classical import (
    FiniteMeasureSpace,
    PointMap,
    doubly_stochastic_check,
    frobenius_perron_of,
    koopman_of,
    multiplicativity_check,
    weighted_permutation_decompose,
)
from .linalg import (
    DEFAULT_TOL,
    DensityMatrix,
    HermitianEig,
    frac_power,
    hermitian_eig,
    matrix_abs,
    polar_decompose,
    psd_leq,
)
from .mpc import (
    SpectralFunction,
    TruncatedKShift,
    WalshOperator,
    build_shift,
    conditional_expectation,
    lambda_build,
    mpc_implementability,
    stochasticity_suite,
    time_operator,
    walsh_to_grid,
    wt_build,
)
from .spaces import (
    P_GRID,
    QuantumMeasure,
    integrability_constant,
    maximally_mixed,
    norm_scale_report,
    schatten_norm,
    tau_conjugate,
    weighted_inner,
    weighted_norm,
)
from .superop import (
    LampertiDecomposition,
    SuperOperator,
    change_of_representation_demo,
    choi,
    implementability_check,
    isometry_check,
    jordan_check,
    jordan_classify,
    lamperti_decompose,
    positivity_check,
    weighted_isometry_transport,
)

__version__ = "0.1.0"
