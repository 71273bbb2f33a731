"""Two-link arm trajectory planning: dynamics, quintic plans, PSO and signal tools."""

from ._core import (
    ArmModel,
    BiotrajError,
    PlannerConfig,
    PlanningProblem,
    PlanResult,
    PsoConfig,
    classic_profile,
    detect_peaks,
    emg_envelope,
    energy_report,
    forward_dynamics,
    inverse_dynamics,
    kinetic_energy,
    load_motion_csv,
    lowpass,
    mass_matrix,
    numeric_derivative,
    optimize_plan,
    potential_energy,
    pso_minimize,
    segment,
    solve_quintic,
    standard_plan,
)

__all__ = [
    "ArmModel",
    "BiotrajError",
    "PlannerConfig",
    "PlanningProblem",
    "PlanResult",
    "PsoConfig",
    "classic_profile",
    "detect_peaks",
    "emg_envelope",
    "energy_report",
    "forward_dynamics",
    "inverse_dynamics",
    "kinetic_energy",
    "load_motion_csv",
    "lowpass",
    "mass_matrix",
    "numeric_derivative",
    "optimize_plan",
    "potential_energy",
    "pso_minimize",
    "segment",
    "solve_quintic",
    "standard_plan",
]
