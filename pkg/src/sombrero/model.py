"""Problem definition for the N-dimensional Sombrero (Mexican-hat) well.

The radial ground-state problem is

    -(1/2) (psi'' + (2k/r) psi') + V(r) psi = E psi,    k = (N - 1)/2,

with V(r) = (1/2) g^2 (r^2 - r0^2)^2 (r^2 + A r0^2) and r0^4 = (2 + N)/3.
A trial state phi solves the same equation with potential V - h and energy
gE0.  ``schroedinger_residual`` checks that identity pointwise working only
with log(phi), which stays finite far out where phi itself underflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class ParameterDomainError(ValueError):
    """Raised when an input falls outside the admissible parameter domain."""


@dataclass(frozen=True)
class ProblemParams:
    """Physical configuration: dimension N, couplings, derived k and r0."""

    N: int
    g: float
    A: float
    k: float
    r0: float


def make_params(N: int, g: float, A: float) -> ProblemParams:
    """Validate (N, g, A) and derive k = (N-1)/2 and r0 = ((2+N)/3)^(1/4)."""
    if int(N) != N or N < 1:
        raise ParameterDomainError(f"N must be a positive integer, got {N!r}")
    if not (g > 0.0):
        raise ParameterDomainError(f"coupling g must be positive, got {g!r}")
    if not (A > 0.0):
        raise ParameterDomainError(f"shape parameter A must be positive, got {A!r}")
    N = int(N)
    k = 0.5 * (N - 1)
    r0 = ((2.0 + N) / 3.0) ** 0.25
    return ProblemParams(N=N, g=float(g), A=float(A), k=k, r0=r0)


def potential(p: ProblemParams, r):
    """Sombrero potential (1/2) g^2 (r^2 - r0^2)^2 (r^2 + A r0^2); even in r."""
    r = np.asarray(r, dtype=float)
    r2 = r * r
    r0sq = p.r0 * p.r0
    return 0.5 * p.g**2 * (r2 - r0sq) ** 2 * (r2 + p.A * r0sq)


@dataclass(frozen=True)
class TrialFunction:
    """A constructed trial ground state.

    ``log_phi`` maps radii to log(phi) and ``d_log_phi`` to its exact
    derivative; ``h`` is the potential correction for r > 0 (its finite
    r -> 0 limit is cached in ``h_at_zero``); the trial solves the
    modified problem at energy ``base_energy`` (= gE0).
    """

    log_phi: Callable
    d_log_phi: Callable
    h: Callable
    h_at_zero: float
    base_energy: float
    meta: object
    label: str


def schroedinger_residual(
    p: ProblemParams,
    phi_log: Callable,
    h: Callable,
    base_energy: float,
    r,
    step: float = 1e-4,
) -> np.ndarray:
    """Pointwise residual of the modified radial eigenvalue equation.

    Uses central differences of s = log(phi), with phi''/phi = s'' + s'^2
    and phi'/phi = s', so the check never forms phi itself.  Zero (to
    truncation error) for an exactly constructed trial function.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ParameterDomainError("residual is defined for r > 0 only")
    if np.any(r <= step):
        raise ParameterDomainError("r must exceed the finite-difference step")
    s_plus = phi_log(r + step)
    s_minus = phi_log(r - step)
    s_mid = phi_log(r)
    ds = (s_plus - s_minus) / (2.0 * step)
    dds = (s_plus - 2.0 * s_mid + s_minus) / (step * step)
    kinetic = -0.5 * (dds + ds * ds + (2.0 * p.k / r) * ds)
    return kinetic + potential(p, r) - h(r) - base_energy
