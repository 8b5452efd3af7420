"""Spherical point sets from perturbed planar lattices and their cap discrepancy."""

from ._capdisc import (
    CapdiscError,
    DegenerateCap,
    DomainError,
    InvalidConfig,
    MissingConvexityData,
    PoleError,
    RankError,
    SingularMatrix,
    TooFew,
    TooLarge,
    bound_report,
    build_point_set,
    cap_preimage,
    clq_estimate,
    estimate_discrepancy,
    exact_discrepancy,
    intersection_number,
    lambert_forward,
    lambert_inverse,
    lattice_sphere_points,
    lemma_bound,
    polar_cap_length,
    polar_certificate,
    run_cli,
    separation_distance,
)

__version__ = "0.1.0"
