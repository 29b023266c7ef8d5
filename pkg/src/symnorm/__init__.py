"""Rotationally symmetric and symmetric gauge norms on a discretized circle.

The package provides the uniform grid of roots of unity with rearrangement
(:mod:`symnorm.grid`), a family of gauge norms (:mod:`symnorm.norms`), their
duals computed by linear programming (:mod:`symnorm.duality`), Fourier kernels
and approximate identities (:mod:`symnorm.fourier`), and Hardy-space
factorization (:mod:`symnorm.hardy`).  ``symnorm verify`` runs the property
suites registered in :mod:`symnorm.suites`.
"""

__version__ = "0.1.0"

from .errors import AliasingError, DegenerateDecompositionError, DomainError
from .grid import (
    Grid,
    GridFunction,
    VectorGridFunction,
    constant,
    from_callable,
    indicator,
    make_grid,
    monomial,
    permute,
    pointwise_magnitude,
    rearrange,
    rotate,
)
from .norms import (
    Combo,
    KyFan,
    Lp,
    Marcinkiewicz,
    NormSpec,
    PermutationWeighted,
    RotationWeighted,
    SupFamily,
    SymmetryClass,
    continuity_modulus,
    decompose_continuous,
    eval_norm,
)
from .duality import DualNorm, bidual_check, dual_norm, hardy_lower_bound, multiplication_operator_norm
from .fourier import (
    Fejer,
    Poisson,
    cesaro_mean,
    conjugate_function,
    convolve,
    from_fourier,
    kernel,
    poisson_extension,
    riesz_project,
    to_fourier,
)
from .hardy import (
    beurling_check,
    blaschke,
    hardy_membership,
    inner_outer_factor,
    is_outer,
    multiplier_norm,
    outer_division_check,
    smirnov_decompose,
)
from .axioms import verify_axioms
