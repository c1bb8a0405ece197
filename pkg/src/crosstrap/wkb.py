"""Semiclassical tunnelling through 1D potential barriers.

T = exp(-2 S / hbar) with S = integral of sqrt(2 m (U - E)) between the
classical turning points.  The barrier arrives as a sampled path; the action
is integrated exactly on the piecewise-linear interpolant, which handles the
square-root turning points without quadrature trouble and is exact for
sample-aligned square barriers.  A rate follows from the attempt frequency
omega_bar / (2 pi); table output treats rates below 1e-3 1/s as zero while
the raw value is kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import hbar

TABLE_RATE_FLOOR = 1e-3  # 1/s


@dataclass
class BarrierScan:
    """A 1D escape path: coordinates s [m], potential [J], atom energy [J]."""

    s: np.ndarray
    potential: np.ndarray
    energy: float
    mass: float
    turning_points: tuple | None = field(default=None)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.potential = np.asarray(self.potential, dtype=float)
        if self.s.ndim != 1 or self.s.shape != self.potential.shape:
            raise ValueError("s and potential must be matching 1D arrays")
        if len(self.s) < 2:
            raise ValueError("barrier scan needs at least 2 samples")
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("s must be strictly increasing")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.turning_points is None:
            self.turning_points = _turning_points(self.s, self.potential, self.energy)


@dataclass(frozen=True)
class TunnellingResult:
    probability: float
    action: float  # S [J s]
    no_barrier: bool
    turning_points: tuple | None


def _turning_points(s, u, energy):
    """(s_in, s_out) bracketing the region where U > E, or None."""
    above = u > energy
    if not above.any():
        return None
    idx = np.flatnonzero(above)
    i0, i1 = idx[0], idx[-1]

    def cross(ia, ib):
        ua, ub = u[ia] - energy, u[ib] - energy
        if ua == ub:
            return s[ia]
        frac = -ua / (ub - ua)
        return s[ia] + frac * (s[ib] - s[ia])

    s_in = cross(i0 - 1, i0) if i0 > 0 else s[0]
    s_out = cross(i1, i1 + 1) if i1 < len(s) - 1 else s[-1]
    return (float(s_in), float(s_out))


def _sqrt_integral(s, rel):
    """Integral of sqrt(max(rel, 0)) ds on the piecewise-linear interpolant."""
    a = rel[:-1]
    b = rel[1:]
    h = np.diff(s)
    total = 0.0
    for ai, bi, hi in zip(a, b, h):
        if ai <= 0.0 and bi <= 0.0:
            continue
        if ai >= 0.0 and bi >= 0.0:
            if ai == bi:
                total += hi * math.sqrt(ai)
            else:
                total += (2.0 * hi / 3.0) * (bi**1.5 - ai**1.5) / (bi - ai)
        elif ai < 0.0 < bi:
            total += (2.0 * hi / 3.0) * bi**1.5 / (bi - ai)
        else:  # bi < 0.0 < ai
            total += (2.0 * hi / 3.0) * ai**1.5 / (ai - bi)
    return total


def tunnelling_probability(scan):
    """WKB transmission through the scanned barrier.

    Returns TunnellingResult; if U <= E everywhere the barrier is gone and
    the probability is 1 by convention, flagged with no_barrier.
    """
    rel = scan.potential - scan.energy
    if not np.any(rel > 0.0):
        return TunnellingResult(1.0, 0.0, True, None)
    action = math.sqrt(2.0 * scan.mass) * _sqrt_integral(scan.s, rel)
    exponent = -2.0 * action / hbar
    probability = math.exp(exponent) if exponent > -745.0 else 0.0
    return TunnellingResult(min(probability, 1.0), action, False, scan.turning_points)


def tunnelling_rate(probability, omega_bar):
    """Escape rate [1/s]: attempt frequency omega_bar/(2 pi) times T."""
    if not 0.0 <= probability <= 1.0:
        raise ValueError("probability must be in [0, 1]")
    if omega_bar <= 0.0:
        raise ValueError("omega_bar must be positive")
    return omega_bar / (2.0 * math.pi) * probability


def table_rate(rate):
    """Rate as reported in summary tables: below 1e-3 1/s counts as zero."""
    return 0.0 if rate < TABLE_RATE_FLOOR else rate
