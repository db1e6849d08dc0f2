"""Radial quadrature on a truncated uniform mesh.

Every integral in the iteration carries the measure r^(2k) phi^2(r) dr.
The measure is held as log-weights shifted by their maximum, so that
exponentials stay in range, and the mesh is truncated where the weight has
dropped by e^-120 relative to its peak.  Prefix/suffix cumulative arrays
use full Simpson panels to even nodes and a half-panel quadratic to odd
nodes, which makes prefix + suffix telescope exactly to the Simpson total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ProblemParams

DECAY_BUDGET = 120.0
DEFAULT_POINTS = 8193


class GridDecayError(RuntimeError):
    """The weight never decays below the truncation budget (bad trial)."""


@dataclass(frozen=True)
class RadialGrid:
    nodes: np.ndarray
    step: float
    r_max: float
    log_weight: np.ndarray
    shift: float
    weight: np.ndarray  # exp(log_weight - shift); exactly 0 at r = 0 for k > 0


def build_grid(p: ProblemParams, log_phi, n_points: int = DEFAULT_POINTS, r_max=None) -> RadialGrid:
    """Uniform mesh on [0, r_max] with the log-domain measure tabulated.

    n_points must be odd (even interval count, composite Simpson) and at
    least 65.  With r_max=None the truncation radius solves
    log_weight(r) - peak = -DECAY_BUDGET by bisection beyond the peak.
    """
    n_points = int(n_points)
    if n_points < 65 or (n_points - 1) % 2 != 0:
        raise ValueError(f"n_points must be odd and >= 65, got {n_points}")
    if r_max is None:
        r_max = _auto_r_max(p, log_phi)
    r_max = float(r_max)
    if r_max <= 0.0:
        raise ValueError("r_max must be positive")
    nodes = np.linspace(0.0, r_max, n_points)
    lw = np.empty(n_points)
    lw[1:] = 2.0 * p.k * np.log(nodes[1:]) + 2.0 * np.asarray(log_phi(nodes[1:]), dtype=float)
    lw[0] = -np.inf if p.k > 0.0 else 2.0 * float(log_phi(0.0))
    shift = float(np.max(lw))
    weight = np.exp(lw - shift)
    return RadialGrid(nodes=nodes, step=float(nodes[1] - nodes[0]), r_max=r_max,
                      log_weight=lw, shift=shift, weight=weight)


def _auto_r_max(p: ProblemParams, log_phi) -> float:
    hi = p.r0 + 20.0
    rs = np.linspace(0.0, hi, 4097)[1:]
    lw = 2.0 * p.k * np.log(rs) + 2.0 * np.asarray(log_phi(rs), dtype=float)
    ipk = int(np.argmax(lw))
    peak = lw[ipk]
    deficit = lw - peak + DECAY_BUDGET
    beyond = np.nonzero(deficit[ipk:] < 0.0)[0]
    if beyond.size == 0:
        raise GridDecayError(
            f"weight has not decayed by e^-{DECAY_BUDGET:.0f} within r <= {hi:.2f}"
        )
    j = ipk + int(beyond[0])
    lo_r, hi_r = rs[j - 1], rs[j]

    def f(r):
        return 2.0 * p.k * math.log(r) + 2.0 * float(log_phi(r)) - peak + DECAY_BUDGET

    for _ in range(80):
        mid = 0.5 * (lo_r + hi_r)
        if f(mid) < 0.0:
            hi_r = mid
        else:
            lo_r = mid
    return 0.5 * (lo_r + hi_r)


# ---------------------------------------------------------------------------
# Simpson machinery (shared by the public API and the iteration engine)
# ---------------------------------------------------------------------------

def simpson_sum(step: float, values: np.ndarray) -> float:
    """Composite Simpson over a uniform mesh with even interval count."""
    return (step / 3.0) * (
        values[0] + values[-1] + 4.0 * np.sum(values[1:-1:2]) + 2.0 * np.sum(values[2:-1:2])
    )


def cum_forward(step: float, values: np.ndarray) -> np.ndarray:
    """Cumulative integral from the left node; Simpson panels to even nodes,
    half-panel quadratic to odd ones, so the last entry is the Simpson total."""
    n = values.shape[0]
    out = np.empty(n)
    out[0] = 0.0
    f0, f1, f2 = values[0:-2:2], values[1:-1:2], values[2::2]
    out[2::2] = np.cumsum((step / 3.0) * (f0 + 4.0 * f1 + f2))
    out[1::2] = out[0:-2:2] + (step / 12.0) * (5.0 * f0 + 8.0 * f1 - f2)
    return out


def cum_backward(step: float, values: np.ndarray) -> np.ndarray:
    """Cumulative integral to the right node, accumulated from the tail."""
    n = values.shape[0]
    out = np.empty(n)
    out[-1] = 0.0
    f0, f1, f2 = values[0:-2:2], values[1:-1:2], values[2::2]
    panels = (step / 3.0) * (f0 + 4.0 * f1 + f2)
    out[0:-2:2] = np.cumsum(panels[::-1])[::-1]
    out[1::2] = out[2::2] + (step / 12.0) * (-f0 + 8.0 * f1 + 5.0 * f2)
    return out


# ---------------------------------------------------------------------------
# public weighted integrals
# ---------------------------------------------------------------------------

def integrate(grid: RadialGrid, density) -> float:
    """Integral of density against the r^(2k) phi^2 measure."""
    vals = grid.weight * np.asarray(density, dtype=float)
    return simpson_sum(grid.step, vals) * math.exp(grid.shift)


def cumulative_prefix(grid: RadialGrid, density) -> np.ndarray:
    """Per-node integral from 0 to r_i of density against the measure."""
    vals = grid.weight * np.asarray(density, dtype=float)
    return cum_forward(grid.step, vals) * math.exp(grid.shift)


def cumulative_suffix(grid: RadialGrid, density) -> np.ndarray:
    """Per-node integral from r_i to r_max, accumulated backward to keep
    relative accuracy in the tail (not computed as total - prefix)."""
    vals = grid.weight * np.asarray(density, dtype=float)
    return cum_backward(grid.step, vals) * math.exp(grid.shift)
