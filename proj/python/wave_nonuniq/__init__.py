"""Nonuniqueness counterexamples for recovering a wave speed from surface data."""

from ._core import (
    ContractError,
    DegenerateVelocities,
    Error,
    GridMismatch,
    InvalidInput,
    ModeMismatch,
    RationalFn,
    Scenario,
    StabilityError,
    SurfaceTrace,
    TimeSignal,
    TrivialSource,
    UnsupportedMultiplicity,
    UnsupportedRepresentation,
    compare_traces,
    construct_multi,
    construct_pair,
    convergence_study,
    fdtd_trace,
    inverse_laplace,
    laplace,
    paper_example,
    partial_fractions,
    relative_l2_error,
    surface_source_obstruction,
    surface_trace,
    verify_identity_symbolic,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
