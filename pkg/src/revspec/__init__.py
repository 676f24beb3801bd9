"""Laplace spectra of rotationally symmetric metrics on the 2-sphere.

The package decomposes the Laplacian of a surface-of-revolution metric into
one-dimensional mode operators, solves them, assembles the global spectrum
with multiplicities, and evaluates sharp closed-form upper bounds for the
distinct eigenvalues together with their verification checks.
"""

from .bounds import (
    BoundsRow,
    ResidualDiagnostic,
    bounds_table,
    bounds_table_csv,
    negative_curvature_bound,
    ray_bound,
    rough_bound,
    sharp_bound,
    trial_residual,
)
from .errors import (
    AssemblyError,
    CurvatureUnavailableError,
    DomainError,
    InapplicabilityError,
    ProfileError,
    QuadratureAccuracyError,
    RevspecError,
)
from .profile import (
    BUILTIN_NAMES,
    ENDPOINT_TOL,
    PROFILE_KINDS,
    CurvatureSignIndicator,
    MetricProfile,
    ProfileSpec,
    ValidationReport,
    build_profile,
    builtin_profile,
    curvature_at,
    curvature_sign_indicator,
    integrate_curvature_moment,
    integrate_moment,
    liouville_length,
    load_profile,
    resolve_profile,
    validate_profile,
)
from .quadrature import ADAPTIVE_GAUSS, GAUSS_JACOBI, QuadratureConfig
from .slsolver import (
    EigenfunctionSamples,
    SLSpectrumSlice,
    SolverConfig,
    TraceReport,
    eigenfunction,
    eigenvalues,
    first_eigenvalue,
    trace_check,
)
from .spectrum import (
    CanonicalComparison,
    Check,
    DistinctEigenvalue,
    GlobalSpectrum,
    VerificationReport,
    assemble_spectrum,
    canonical_comparison,
    verify_interlacing,
    verify_monotonicity,
    verify_multiplicity_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ADAPTIVE_GAUSS",
    "AssemblyError",
    "BUILTIN_NAMES",
    "BoundsRow",
    "CanonicalComparison",
    "Check",
    "CurvatureSignIndicator",
    "CurvatureUnavailableError",
    "DistinctEigenvalue",
    "DomainError",
    "ENDPOINT_TOL",
    "EigenfunctionSamples",
    "GAUSS_JACOBI",
    "GlobalSpectrum",
    "InapplicabilityError",
    "MetricProfile",
    "PROFILE_KINDS",
    "ProfileError",
    "ProfileSpec",
    "QuadratureAccuracyError",
    "QuadratureConfig",
    "ResidualDiagnostic",
    "RevspecError",
    "SLSpectrumSlice",
    "SolverConfig",
    "TraceReport",
    "ValidationReport",
    "VerificationReport",
    "assemble_spectrum",
    "bounds_table",
    "bounds_table_csv",
    "build_profile",
    "builtin_profile",
    "canonical_comparison",
    "curvature_at",
    "curvature_sign_indicator",
    "eigenfunction",
    "eigenvalues",
    "first_eigenvalue",
    "integrate_curvature_moment",
    "integrate_moment",
    "liouville_length",
    "load_profile",
    "negative_curvature_bound",
    "ray_bound",
    "resolve_profile",
    "rough_bound",
    "sharp_bound",
    "trace_check",
    "trial_residual",
    "validate_profile",
    "verify_interlacing",
    "verify_monotonicity",
    "verify_multiplicity_bound",
]
