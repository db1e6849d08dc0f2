"""Independent finite-difference check on the ground-state energy.

Reduces the radial problem to -(1/2) u'' + [V + k(k-1)/(2 r^2)] u = E u via
u = r^k psi, discretizes with the three-point stencil, and extracts the
smallest eigenvalue of the symmetric tridiagonal matrix by Sturm-sequence
bisection.  No trial-function machinery is involved, so this cross-checks
the iterative solvers end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProblemParams, potential


@dataclass(frozen=True)
class FDProblem:
    p: ProblemParams
    r_max: float
    n: int
    substituted: bool  # True when working on u = r^k psi


def _count_eigs_below(diag: np.ndarray, off_sq: np.ndarray, lam: float) -> int:
    """Sturm count: eigenvalues of the tridiagonal matrix below lam."""
    count = 0
    q = diag[0] - lam
    if q < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        if q == 0.0:
            q = -1e-300
        q = diag[i] - lam - off_sq[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def _smallest_eig(diag: np.ndarray, off: np.ndarray) -> float:
    off_sq = off * off
    bound = 2.0 * float(np.max(np.abs(off))) if off.size else 0.0
    lo = float(np.min(diag)) - bound - 1.0
    hi = float(np.max(diag)) + bound + 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _count_eigs_below(diag, off_sq, mid) >= 1:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-13 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def _fd_energy_once(p: ProblemParams, r_max: float, n: int) -> float:
    if p.N == 1:
        # one-dimensional line problem; the even ground state satisfies
        # psi'(0) = 0 automatically on the symmetric Dirichlet box
        h = 2.0 * r_max / n
        x = -r_max + h * np.arange(1, n)
        diag = 1.0 / h**2 + potential(p, np.abs(x))
    else:
        h = r_max / n
        r = h * np.arange(1, n)
        diag = 1.0 / h**2 + potential(p, r) + p.k * (p.k - 1.0) / (2.0 * r * r)
    off = np.full(diag.shape[0] - 1, -0.5 / h**2)
    return _smallest_eig(diag, off)


def fd_ground_energy(p: ProblemParams, r_max: float, n: int = 4096) -> float:
    """Ground-state energy with h^2 Richardson extrapolation over (n, 2n)."""
    n = int(n)
    if n < 200:
        raise ValueError(f"n must be >= 200, got {n}")
    if r_max <= 0.0:
        raise ValueError("r_max must be positive")
    e_coarse = _fd_energy_once(p, float(r_max), n)
    e_fine = _fd_energy_once(p, float(r_max), 2 * n)
    return e_fine + (e_fine - e_coarse) / 3.0
