"""Reflection and transmission of 1D Schrodinger operators.

Three independent routes to the same reflection probability:

* Weyl m-functions and the 2x2 scattering matrix of the coupled/decoupled pair
  (`weyl`, `scattering`),
* a plane-wave transfer-matrix oracle for compactly supported potentials
  (`oracle`),
* time-dependent wave-packet evolution (`dynamics`).

`lattice` verifies the rank-one resolvent identity behind the scattering
construction on a finite-difference model, and `cli` drives batch sweeps.
"""
from .errors import (
    BoundaryLeak,
    ConfigParseError,
    DegenerateEnergy,
    EvanescentOverflow,
    ExtrapolationDivergence,
    InvalidPotential,
    InvalidSlabWidth,
    NodeAtOrigin,
    NotConverged,
    OdeStepFailure,
    ResonantDenominator,
    SingularResolvent,
    UnboundedTail,
    ValidationError,
    WeylScatterError,
)
from .potential import (
    GaussianBump,
    PoschlTeller,
    Potential,
    Sampled,
    SquareBarrier,
    Step,
    Truncated,
    ValidationReport,
    Zero,
    effective_support,
    evaluate,
    potential_from_config,
    potential_from_json,
    truncated,
    validate,
)
from .weyl import MValue, SolverOptions, ac_density, boundary_m, interior_m
from .scattering import (
    ReflectionRecord,
    ReflectionlessWindow,
    ScatteringMatrix2,
    analyze,
    boundary_pair,
    green00,
    reflectionless_scan,
    scattering_matrix,
    spectral_reflection,
)
from .oracle import TransferResult, closed_form_barrier, transfer_reflection, transfer_reflection_grid
from .dynamics import (
    PacketResult,
    PacketSpec,
    SplitStepPropagator,
    evolve_packet,
    momentum_density,
    predicted_reflection,
)
from .lattice import (
    LatticeModel,
    RankOneReport,
    decoupled_resolvent,
    lattice_model_from_potential,
    resolvent_difference_check,
)

__all__ = [
    "BoundaryLeak",
    "ConfigParseError",
    "DegenerateEnergy",
    "EvanescentOverflow",
    "ExtrapolationDivergence",
    "GaussianBump",
    "InvalidPotential",
    "InvalidSlabWidth",
    "LatticeModel",
    "MValue",
    "NodeAtOrigin",
    "NotConverged",
    "OdeStepFailure",
    "PacketResult",
    "PacketSpec",
    "PoschlTeller",
    "Potential",
    "RankOneReport",
    "ReflectionRecord",
    "ReflectionlessWindow",
    "ResonantDenominator",
    "Sampled",
    "ScatteringMatrix2",
    "SingularResolvent",
    "SolverOptions",
    "SplitStepPropagator",
    "SquareBarrier",
    "Step",
    "TransferResult",
    "Truncated",
    "UnboundedTail",
    "ValidationError",
    "ValidationReport",
    "WeylScatterError",
    "Zero",
    "ac_density",
    "analyze",
    "boundary_m",
    "boundary_pair",
    "closed_form_barrier",
    "decoupled_resolvent",
    "effective_support",
    "evaluate",
    "evolve_packet",
    "green00",
    "interior_m",
    "lattice_model_from_potential",
    "momentum_density",
    "potential_from_config",
    "potential_from_json",
    "predicted_reflection",
    "reflectionless_scan",
    "resolvent_difference_check",
    "scattering_matrix",
    "spectral_reflection",
    "transfer_reflection",
    "transfer_reflection_grid",
    "truncated",
    "validate",
]
