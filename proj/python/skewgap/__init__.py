"""Spectral gaps of a particle confined to a curved surface.

The heavy lifting happens in the compiled ``_skewgap`` extension; this package
re-exports it.
"""

from ._skewgap import (
    ConvergenceError,
    DomainError,
    Error,
    GeometricSummary,
    MeshError,
    ParseError,
    PhysicalUnits,
    SpectralResult,
    TriangleMesh,
    analyze,
    bound_report,
    csc_bifurcation_value,
    csc_denominator,
    csc_discriminant,
    csc_double_root,
    csc_intervals,
    csc_profile,
    curvatures,
    ellipsoid,
    gap_bound_nona,
    gap_bound_oka_printed,
    gap_bound_oka_reconstructed,
    gap_bound_result1,
    gap_bound_result2,
    geometric_summary,
    icosphere,
    lambda0_lower_bound,
    load_mesh,
    quotient_torus,
    save_mesh,
    scale_mesh,
    solve_fem,
    torus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
