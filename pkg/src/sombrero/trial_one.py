"""Trial function I: phi = exp(-S0) with a quartic-plus-log exponent.

S0(r) = (g/4) r^4 + c r^2 + m log(r^2 + 1).  The quartic coefficient kills
the r^6 term of the potential; c and m are chosen to cancel the remaining
growing terms, leaving a correction h(r) built from inverse powers of
(r^2 + 1) and an exactly known base energy gE0.  At g = 1, A = 2 the
construction degenerates to the exact ground state exp(-r^4/4) with h = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProblemParams, TrialFunction


@dataclass(frozen=True)
class TrialOneCoeffs:
    """Exponent coefficients; e and alpha are frozen normalization choices."""

    a4: float
    c: float
    m: float
    e: float = 0.0
    alpha: float = 1.0


def coeffs_one(p: ProblemParams) -> TrialOneCoeffs:
    """Coefficients that cancel the r^4 and r^2 terms of the residual."""
    r0sq = p.r0**2
    r0p4 = r0sq * r0sq
    c = 0.25 * p.g * (p.A - 2.0) * r0sq
    m = 0.25 * (p.g + 3.0) * r0p4 - p.g * (p.A + 2.0) ** 2 * r0p4 / 16.0
    return TrialOneCoeffs(a4=0.25 * p.g, c=c, m=m)


def log_phi_one(p: ProblemParams, r):
    """log phi = -S0(r)."""
    co = coeffs_one(p)
    r = np.asarray(r, dtype=float)
    r2 = r * r
    return -(co.a4 * r2 * r2 + co.c * r2) - co.m * np.log1p(r2)


def d_log_phi_one(p: ProblemParams, r):
    """Exact derivative of log phi = -S0'."""
    co = coeffs_one(p)
    r = np.asarray(r, dtype=float)
    return -(p.g * r**3 + 2.0 * co.c * r + 2.0 * co.m * r / (r * r + 1.0))


def h_one(p: ProblemParams, r):
    """Potential correction; finite everywhere and O(1/r^2) at infinity."""
    co = coeffs_one(p)
    m = co.m
    r = np.asarray(r, dtype=float)
    x = r * r + 1.0
    lead = 2.0 * m * (m + 1.0)
    tail = m * p.g * (p.A - 2.0) * p.r0**2 - 2.0 * m * p.g + 2.0 * m * p.k - 2.0 * m * m - m
    return lead / (x * x) + tail / x


def base_energy_one(p: ProblemParams) -> float:
    """Base energy gE0 of the modified problem solved by trial I."""
    co = coeffs_one(p)
    r0sq = p.r0**2
    return (
        0.5 * p.A * p.g**2 * r0sq**3
        + 2.0 * co.m * p.g
        + (2.0 * p.k + 1.0 - 4.0 * co.m) * 0.25 * p.g * (p.A - 2.0) * r0sq
    )


def make_trial_one(p: ProblemParams) -> TrialFunction:
    return TrialFunction(
        log_phi=lambda r: log_phi_one(p, r),
        d_log_phi=lambda r: d_log_phi_one(p, r),
        h=lambda r: h_one(p, r),
        h_at_zero=float(h_one(p, 0.0)),
        base_energy=base_energy_one(p),
        meta=coeffs_one(p),
        label="one",
    )
