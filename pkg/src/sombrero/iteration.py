"""The two iterative refinement schemes for the ground state.

f-iteration refines the multiplicative correction f = psi/phi; tau-iteration
refines the exponent correction tau = -log(psi/phi).  Both produce the energy
sequence E_n = gE0 + Delta_n.  The inner integrals are balanced: their total
vanishes by the definition of Delta_n, so the prefix form is used up to the
cumulative extremum and the negated suffix beyond it, which keeps relative
accuracy where the measure has decayed by dozens of orders of magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import ProblemParams, TrialFunction
from .quadrature import RadialGrid, build_grid, cum_backward, cum_forward, simpson_sum
from .trial_one import make_trial_one
from .trial_two import make_trial_two

DEFAULT_TOL = 1e-4
DEFAULT_ORDERS = 12


class DegenerateDenominatorError(RuntimeError):
    """A normalization integral vanished; the trial state is unusable."""


class ProfileOverflowError(FloatingPointError):
    """A profile update left the floating range (grid too wide or too coarse)."""


@dataclass(frozen=True)
class IterationState:
    order: int
    delta: float
    profile: np.ndarray  # f_n values for method "f", tau'_n values for "tau"
    method: str


@dataclass(frozen=True)
class SolveResult:
    energies: np.ndarray
    converged: bool
    final_psi: np.ndarray
    iterations_used: int
    trial_meta: object
    method: str
    trial: str
    grid: RadialGrid


def _balanced_inner(step: float, integrand: np.ndarray) -> np.ndarray:
    pre = cum_forward(step, integrand)
    suf = cum_backward(step, integrand)
    ix = int(np.argmax(np.abs(pre)))
    inner = np.array(pre, copy=True)
    inner[ix + 1:] = -suf[ix + 1:]
    return inner


def _per_weight(grid: RadialGrid, inner: np.ndarray) -> np.ndarray:
    """inner/weight with the r=0 node pinned to its zero limit."""
    out = np.zeros_like(inner)
    np.divide(inner, grid.weight, out=out, where=grid.weight > 0.0)
    out[0] = 0.0
    return out


def delta_f(grid: RadialGrid, h_values: np.ndarray, f_prev: np.ndarray) -> float:
    """Energy correction of the f scheme: weighted mean of h against f_prev."""
    w = grid.weight
    den = simpson_sum(grid.step, w * f_prev)
    if abs(den) < 1e-300:
        raise DegenerateDenominatorError("normalization integral vanished in delta_f")
    num = simpson_sum(grid.step, w * h_values * f_prev)
    return num / den


def update_f(grid, h_values, f_prev, delta_n, r_c: str = "zero",
             tail_shift: float = 0.0) -> np.ndarray:
    """Next multiplicative profile, normalized to 1 at the chosen endpoint.

    For r_c = "infinity" the normalization point is true infinity, beyond the
    truncated mesh; ``tail_shift`` carries the (small, additive) remainder of
    the outer integral over [r_max, inf), see ``infinity_tail_shift``.
    """
    integrand = grid.weight * (delta_n - h_values) * f_prev
    outer = _per_weight(grid, _balanced_inner(grid.step, integrand))
    if r_c == "zero":
        f_next = 1.0 - 2.0 * cum_forward(grid.step, outer)
    elif r_c == "infinity":
        f_next = (1.0 + tail_shift) + 2.0 * cum_backward(grid.step, outer)
    else:
        raise ValueError(f"r_c must be 'zero' or 'infinity', got {r_c!r}")
    if not np.all(np.isfinite(f_next)):
        raise ProfileOverflowError("f update left the floating range")
    return f_next


def infinity_tail_shift(p: ProblemParams, trial_fn: TrialFunction, grid: RadialGrid,
                        delta_n: float, f_tail: float) -> float:
    """Additive offset 2*int_{r_max}^inf inner/weight dy for f(inf) = 1.

    Past the mesh the ratio inner/weight tends to (delta - h)*f_prev divided
    by d(log weight)/dr, which decays only algebraically (~1/y^3), so the
    truncated-mesh normalization f(r_max) = 1 and the true f(inf) = 1 differ
    by a small additive constant.  The integral is evaluated under y =
    r_max/x, mapping infinity to x = 0 where the integrand vanishes.
    """
    x = np.linspace(0.0, 1.0, 257)
    y = grid.r_max / x[1:]
    dlw = 2.0 * p.k / y + 2.0 * np.asarray(trial_fn.d_log_phi(y), dtype=float)
    ratio = (delta_n - np.asarray(trial_fn.h(y), dtype=float)) / dlw
    vals = np.zeros_like(x)
    vals[1:] = ratio * grid.r_max / (x[1:] * x[1:])
    return 2.0 * f_tail * simpson_sum(x[1] - x[0], vals)


def delta_tau(grid, h_values, tau_prime_prev, denominator: Optional[float] = None) -> float:
    """Energy correction of the tau scheme; the denominator never changes
    across orders so callers may pass it in precomputed."""
    w = grid.weight
    den = simpson_sum(grid.step, w) if denominator is None else denominator
    if abs(den) < 1e-300:
        raise DegenerateDenominatorError("normalization integral vanished in delta_tau")
    num = simpson_sum(grid.step, w * (h_values - 0.5 * tau_prime_prev**2))
    return num / den


def update_tau(grid, h_values, tau_prime_prev, delta_n) -> np.ndarray:
    """Next exponent-slope profile tau'_n; zero at r = 0 by the limit."""
    integrand = grid.weight * ((delta_n - h_values) + 0.5 * tau_prime_prev**2)
    tau_prime = 2.0 * _per_weight(grid, _balanced_inner(grid.step, integrand))
    if not np.all(np.isfinite(tau_prime)):
        raise ProfileOverflowError("tau' update left the floating range")
    return tau_prime


def _make_trial(p: ProblemParams, trial, root_choice: str) -> TrialFunction:
    name = {1: "one", 2: "two", "1": "one", "2": "two"}.get(trial, trial)
    if name == "one":
        return make_trial_one(p)
    if name == "two":
        return make_trial_two(p, root_choice=root_choice)
    raise ValueError(f"trial must be 'one' or 'two', got {trial!r}")


def solve(
    p: ProblemParams,
    trial="one",
    method: str = "tau",
    orders: int = DEFAULT_ORDERS,
    tol: float = DEFAULT_TOL,
    n_points: Optional[int] = None,
    r_max=None,
    r_c: str = "auto",
    root_choice: str = "auto",
) -> SolveResult:
    """Run the chosen iteration until |E_n - E_{n-1}| < tol or orders run out.

    Non-convergence is a flagged result, not an error.  The final wave
    function is assembled as f*phi (or exp(-tau)*phi) and peak-normalized.
    r_c applies to the f scheme only; "auto" resolves to "infinity" for
    trial I and "zero" for trial II, the endpoints that reproduce the
    reference tables.
    """
    if orders < 1:
        raise ValueError("orders must be >= 1")
    if method not in ("f", "tau"):
        raise ValueError(f"method must be 'f' or 'tau', got {method!r}")
    trial_fn = _make_trial(p, trial, root_choice)
    if r_c == "auto":
        r_c = "infinity" if trial_fn.label == "one" else "zero"
    elif r_c not in ("zero", "infinity"):
        raise ValueError(f"r_c must be 'auto', 'zero' or 'infinity', got {r_c!r}")
    grid = build_grid(p, trial_fn.log_phi,
                      n_points=n_points if n_points is not None else 8193,
                      r_max=r_max)
    h_values = np.empty_like(grid.nodes)
    h_values[0] = trial_fn.h_at_zero
    h_values[1:] = trial_fn.h(grid.nodes[1:])

    energies = [trial_fn.base_energy]
    converged = False
    if method == "f":
        state = IterationState(order=0, delta=0.0, profile=np.ones_like(grid.nodes), method="f")
    else:
        state = IterationState(order=0, delta=0.0, profile=np.zeros_like(grid.nodes), method="tau")
    tau_denominator = simpson_sum(grid.step, grid.weight) if method == "tau" else None

    for n in range(1, orders + 1):
        if method == "f":
            delta = delta_f(grid, h_values, state.profile)
            shift = 0.0
            if r_c == "infinity":
                shift = infinity_tail_shift(p, trial_fn, grid, delta, float(state.profile[-1]))
            profile = update_f(grid, h_values, state.profile, delta, r_c=r_c, tail_shift=shift)
        else:
            delta = delta_tau(grid, h_values, state.profile, tau_denominator)
            profile = update_tau(grid, h_values, state.profile, delta)
        state = IterationState(order=n, delta=delta, profile=profile, method=method)
        energies.append(trial_fn.base_energy + delta)
        if abs(energies[-1] - energies[-2]) < tol:
            converged = True
            break

    log_phi_nodes = np.asarray(trial_fn.log_phi(grid.nodes), dtype=float)
    phi = np.exp(log_phi_nodes - np.max(log_phi_nodes))
    if method == "f":
        psi = state.profile * phi
    else:
        tau = cum_forward(grid.step, state.profile)
        psi = np.exp(-tau) * phi
    psi = psi / np.max(psi)

    return SolveResult(
        energies=np.asarray(energies),
        converged=converged,
        final_psi=psi,
        iterations_used=state.order,
        trial_meta=trial_fn.meta,
        method=method,
        trial=trial_fn.label,
        grid=grid,
    )
