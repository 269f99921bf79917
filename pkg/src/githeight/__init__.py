"""Heights of points on GIT quotients over the rationals.

The height of a semistable point on a quotient decomposes as the naive
height of the point plus one nonpositive instability measure per place of
Q, with the measure hitting -infinity exactly on unstable points.  This
package computes every term of that decomposition for two families of
actions, split-torus actions on projective space and conjugation acting on
matrices, keeping the finite-place contributions as exact rational
multiples of log p and isolating floating point to the archimedean place.

Supporting machinery: Newton polygons for p-adic root valuations, an exact
Fourier-Motzkin linear program for piecewise-linear instability, a damped
Newton minimizer for the archimedean one, minimality tests (normality at
the archimedean place, non-nilpotent reduction mod p elsewhere), moment
maps, Arakelov degrees and slopes of rational lattices, and explicit slope
lower bounds with their antisymmetrization-norm ingredients.
"""

from .bounds import (
    CONVEX_LEMMA_VARIANTS,
    MAX_TENSOR_DIM,
    EpsilonNormResult,
    PermSpec,
    convex_lemma_argmin,
    convex_lemma_min,
    ell,
    epsilon_map,
    epsilon_norm_check,
    explicit_lower_bound,
    perm_invariant_check,
    permutation_operator,
)
from .conjugation import (
    NORM_CHOICES,
    EigenData,
    MatrixQ,
    MinimalityReport,
    charpoly_of,
    eigen_data,
    fundamental_formula_residual_conj,
    instability_conj,
    is_minimal_arch,
    is_minimal_nonarch,
    is_semistable_conj,
    moment_map_conj,
    naive_matrix_height,
    orbit_sampling_bound,
    quotient_height_conj,
    skew_hermitian_basis,
)
from .errors import (
    AllRootsZeroError,
    AllZeroError,
    DimensionTooLargeError,
    DomainError,
    GitHeightError,
    InputError,
    LengthMismatchError,
    NilpotentError,
    NoConvergenceError,
    NonPositiveError,
    NonSquareError,
    NotPositiveDefiniteError,
    NotSkewHermitianError,
    UnstableError,
    UnsupportedSizeError,
    ZeroInputError,
    ZeroMatrixError,
    ZeroPolynomialError,
)
from .exactpoly import (
    ComplexMultiset,
    NewtonPolygon,
    PolyQ,
    charpoly,
    complex_roots,
    max_root_log_abs,
    newton_polygon,
)
from .heights import (
    HermitianLattice,
    ProjectivePointQ,
    arakelov_degree,
    naive_height,
    naive_height_coords,
    slope,
    twist_shift,
)
from .places import (
    ARCHIMEDEAN,
    DEFAULT_COMPARE_TOL,
    LogValue,
    Place,
    as_fraction,
    exact_log_abs_arch,
    factorize,
    is_prime,
    log_abs,
    product_formula_residual,
    support_primes,
    valuation,
    values_close,
)
from .torus import (
    InstabilityReport,
    TorusAction,
    destabilizing_1ps,
    instability_arch,
    instability_nonarch,
    is_semistable,
    kempf_ness_profile,
    quotient_height,
    residually_semistable_direct,
)

__version__ = "0.1.0"

__all__ = [
    "ARCHIMEDEAN",
    "CONVEX_LEMMA_VARIANTS",
    "DEFAULT_COMPARE_TOL",
    "MAX_TENSOR_DIM",
    "NORM_CHOICES",
    "AllRootsZeroError",
    "AllZeroError",
    "ComplexMultiset",
    "DimensionTooLargeError",
    "DomainError",
    "EigenData",
    "EpsilonNormResult",
    "GitHeightError",
    "HermitianLattice",
    "InputError",
    "InstabilityReport",
    "LengthMismatchError",
    "LogValue",
    "MatrixQ",
    "MinimalityReport",
    "NewtonPolygon",
    "NilpotentError",
    "NoConvergenceError",
    "NonPositiveError",
    "NonSquareError",
    "NotPositiveDefiniteError",
    "NotSkewHermitianError",
    "PermSpec",
    "Place",
    "PolyQ",
    "ProjectivePointQ",
    "TorusAction",
    "UnstableError",
    "UnsupportedSizeError",
    "ZeroInputError",
    "ZeroMatrixError",
    "ZeroPolynomialError",
    "arakelov_degree",
    "as_fraction",
    "charpoly",
    "charpoly_of",
    "complex_roots",
    "convex_lemma_argmin",
    "convex_lemma_min",
    "destabilizing_1ps",
    "eigen_data",
    "ell",
    "epsilon_map",
    "epsilon_norm_check",
    "exact_log_abs_arch",
    "explicit_lower_bound",
    "factorize",
    "fundamental_formula_residual_conj",
    "instability_arch",
    "instability_conj",
    "instability_nonarch",
    "is_minimal_arch",
    "is_minimal_nonarch",
    "is_prime",
    "is_semistable",
    "is_semistable_conj",
    "kempf_ness_profile",
    "log_abs",
    "max_root_log_abs",
    "moment_map_conj",
    "naive_height",
    "naive_height_coords",
    "naive_matrix_height",
    "newton_polygon",
    "orbit_sampling_bound",
    "perm_invariant_check",
    "permutation_operator",
    "product_formula_residual",
    "quotient_height",
    "quotient_height_conj",
    "residually_semistable_direct",
    "skew_hermitian_basis",
    "slope",
    "support_primes",
    "twist_shift",
    "valuation",
    "values_close",
]
