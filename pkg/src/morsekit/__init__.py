"""Bound states, transition dipoles, level sets, and pulse plans for Morse wells.

The layers stack bottom-up: ``potential`` holds the well and its closed-form
spectrum, ``solver`` finds bound states by Runge-Kutta shooting (with an
independent finite-difference oracle), ``observables`` integrates transition
moments, ``levelset`` maps constant-energy curves of a two-well pair, and
``control`` turns rotations of product states into resonant pulse plans.
``cli`` wires everything into a command line tool.
"""

from .control import (
    NotNormalized,
    Pulse,
    PulsePlan,
    RotationPlan,
    ZeroDipole,
    angles_of,
    apply_rotation,
    plan_pulses,
    plan_rotation,
    rotation_matrix,
)
from .levelset import (
    Classification,
    LevelSetCurve,
    ModeSpectrum,
    ProductState,
    TwoModeSystem,
    analytic_mode,
    energy_expectation,
    full_ellipse_condition,
    level_set,
    wrap_angle,
)
from .observables import (
    DepthSweepEntry,
    DipoleResult,
    GridMismatch,
    dipole_depth_sweep,
    moment,
    transition_dipole,
)
from .potential import (
    AnharmonicApprox,
    MorsePotential,
    analytic_spectrum,
    anharmonic_spectrum,
    bound_state_count,
    evaluate_potential,
)
from .solver import (
    BoundState,
    Grid,
    GridTooCoarse,
    GridWavefunction,
    NoConvergence,
    NoSuchBoundState,
    ShootingOptions,
    TrialIntegration,
    ZeroFunction,
    all_bound_states,
    domain_for_level,
    fd_reference_spectrum,
    fd_reference_states,
    find_bound_state,
    integrate_trial,
    normalize,
)

__version__ = "0.1.0"

__all__ = [
    "AnharmonicApprox",
    "BoundState",
    "Classification",
    "DepthSweepEntry",
    "DipoleResult",
    "Grid",
    "GridMismatch",
    "GridTooCoarse",
    "GridWavefunction",
    "LevelSetCurve",
    "ModeSpectrum",
    "MorsePotential",
    "NoConvergence",
    "NoSuchBoundState",
    "NotNormalized",
    "ProductState",
    "Pulse",
    "PulsePlan",
    "RotationPlan",
    "ShootingOptions",
    "TrialIntegration",
    "TwoModeSystem",
    "ZeroDipole",
    "ZeroFunction",
    "all_bound_states",
    "analytic_mode",
    "analytic_spectrum",
    "angles_of",
    "anharmonic_spectrum",
    "apply_rotation",
    "bound_state_count",
    "dipole_depth_sweep",
    "domain_for_level",
    "energy_expectation",
    "evaluate_potential",
    "fd_reference_spectrum",
    "fd_reference_states",
    "find_bound_state",
    "full_ellipse_condition",
    "integrate_trial",
    "level_set",
    "moment",
    "normalize",
    "plan_pulses",
    "plan_rotation",
    "rotation_matrix",
    "transition_dipole",
    "wrap_angle",
]
