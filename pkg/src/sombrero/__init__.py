"""Iterative ground-state solvers for the N-dimensional Sombrero potential."""

from .model import (
    ParameterDomainError,
    ProblemParams,
    TrialFunction,
    make_params,
    potential,
    schroedinger_residual,
)
from .trial_one import TrialOneCoeffs, base_energy_one, coeffs_one, h_one, log_phi_one, make_trial_one
from .trial_two import (
    TrialTwoConfig,
    RootSolve,
    base_energy_two,
    configure_trial_two,
    fix_xi,
    h_two,
    h_two_at_zero,
    log_phi_two,
    make_trial_two,
    s0_prime_two,
    s0_two,
    s1_prime_two,
    s1_two,
    solve_a,
)
from .quadrature import RadialGrid, build_grid, cumulative_prefix, cumulative_suffix, integrate
from .iteration import SolveResult, delta_f, delta_tau, solve, update_f, update_tau
from .oracle import fd_ground_energy

__version__ = "0.1.0"

__all__ = [
    "ParameterDomainError",
    "ProblemParams",
    "TrialFunction",
    "make_params",
    "potential",
    "schroedinger_residual",
    "TrialOneCoeffs",
    "coeffs_one",
    "log_phi_one",
    "h_one",
    "base_energy_one",
    "make_trial_one",
    "TrialTwoConfig",
    "RootSolve",
    "solve_a",
    "s0_two",
    "s0_prime_two",
    "s1_two",
    "s1_prime_two",
    "log_phi_two",
    "h_two",
    "h_two_at_zero",
    "base_energy_two",
    "fix_xi",
    "configure_trial_two",
    "make_trial_two",
    "RadialGrid",
    "build_grid",
    "integrate",
    "cumulative_prefix",
    "cumulative_suffix",
    "SolveResult",
    "delta_f",
    "update_f",
    "delta_tau",
    "update_tau",
    "solve",
    "fd_ground_energy",
    "__version__",
]
