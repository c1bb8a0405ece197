"""Spontaneous photon scattering at the trap minimum and coherence time.

Each colour scatters at Gamma = beta(lambda) * I(minimum), with the local
intensity including the evanescent decay to the minimum height.  Coherence
time is the inverse total scattering rate; the published (Gamma_b, Gamma_r,
tau) triples satisfy that combination rule to rounding, which pins it down
even though no formula is stated alongside them.  Intensities are evaluated
exactly at the minimum position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atomic import scattering_coefficient
from .modes import decay_length, surface_intensity


@dataclass(frozen=True)
class CoherenceReport:
    gamma_blue: float  # 1/s
    gamma_red: float  # 1/s
    coherence_time: float  # s, inf when both rates vanish


def coherence_time(gamma_blue, gamma_red):
    """1 / (Gamma_b + Gamma_r) [s]; inf for zero total rate."""
    if gamma_blue < 0 or gamma_red < 0:
        raise ValueError("scattering rates must be >= 0")
    total = gamma_blue + gamma_red
    return math.inf if total == 0.0 else 1.0 / total


def local_intensity(pair, position):
    """One colour's intensity at (x, y, z) near the surface [W/m^2]."""
    x, y, z = position
    d = decay_length(pair.mode_i)
    return float(surface_intensity(pair, y, z) * np.exp(-2.0 * x / d))


def scattering_at_minimum(config, position):
    """Scattering rates of both colours at the trap minimum, plus tau_coh."""
    beta_b = scattering_coefficient(config.species, config.blue.wavelength)
    beta_r = scattering_coefficient(config.species, config.red.wavelength)
    gamma_b = beta_b * local_intensity(config.blue, position)
    gamma_r = beta_r * local_intensity(config.red, position)
    return CoherenceReport(gamma_b, gamma_r, coherence_time(gamma_b, gamma_r))
