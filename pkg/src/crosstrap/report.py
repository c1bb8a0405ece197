"""End-to-end trap characterisation: one config in, one report out.

Pipeline: surface modes -> potential minimum -> curvatures and depths ->
harmonic fits of the diagonal escape channels -> WKB escape rates at the
configured atom temperature -> scattering rates and coherence time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import k as k_B

from .analysis import (diagonal_scan, find_minimum, harmonic_fit, trap_depths,
                       vibrational_frequencies)
from .config_io import config_sha256
from .potential import potential_at
from .scattering import scattering_at_minimum
from .wkb import BarrierScan, table_rate, tunnelling_probability, tunnelling_rate

_UK = k_B * 1e-6


@dataclass
class TunnellingSummary:
    probability: float
    action: float
    rate: float  # raw, 1/s
    rate_table: float  # rounded-to-zero below 1e-3


@dataclass
class TrapReport:
    """Characterisation of one crossed-waveguide trap configuration."""

    name: str
    config_sha256: str
    min_position: tuple  # (x, y, z) [m]
    min_energy: float  # J
    depth_x: float  # J
    depth_yz: float
    depth_l: float
    depth_t: float
    omega_x: float  # rad/s
    omega_y: float
    omega_z: float
    aspect_ratio_xy: float
    omega_bar_l: float  # rad/s
    omega_bar_t: float
    atom_temperature: float  # K
    tunnelling_l: TunnellingSummary
    tunnelling_t: TunnellingSummary
    gamma_scat_blue: float  # 1/s
    gamma_scat_red: float
    coherence_time: float  # s

    def to_dict(self):
        def tun(t):
            return {
                "probability": t.probability,
                "action_Js": t.action,
                "rate_per_s": t.rate,
                "rate_table_per_s": t.rate_table,
            }

        return {
            "name": self.name,
            "config_sha256": self.config_sha256,
            "min_position_nm": {
                "x": self.min_position[0] * 1e9,
                "y": self.min_position[1] * 1e9,
                "z": self.min_position[2] * 1e9,
            },
            "min_energy_J": self.min_energy,
            "min_energy_uK": self.min_energy / _UK,
            "depths_uK": {
                "x": self.depth_x / _UK,
                "yz": self.depth_yz / _UK,
                "l": self.depth_l / _UK,
                "t": self.depth_t / _UK,
            },
            "frequencies_rad_s": {
                "x": self.omega_x,
                "y": self.omega_y,
                "z": self.omega_z,
                "bar_l": self.omega_bar_l,
                "bar_t": self.omega_bar_t,
            },
            "frequencies_kHz": {
                "x": self.omega_x / (2 * math.pi) / 1e3,
                "y": self.omega_y / (2 * math.pi) / 1e3,
                "z": self.omega_z / (2 * math.pi) / 1e3,
            },
            "aspect_ratio_xy": self.aspect_ratio_xy,
            "atom_temperature_uK": self.atom_temperature * 1e6,
            "tunnelling_l": tun(self.tunnelling_l),
            "tunnelling_t": tun(self.tunnelling_t),
            "scattering_per_s": {
                "blue": self.gamma_scat_blue,
                "red": self.gamma_scat_red,
            },
            "coherence_time_s": (
                self.coherence_time if math.isfinite(self.coherence_time) else None
            ),
        }


def _escape_path(config, profile, x_floor=50e-9, x_step=1e-9):
    """1D escape path: diagonal minima floor, then the plunge to the surface.

    Past the fold the column minimum disappears, so the path continues
    straight down in x at the last surviving column.
    """
    sl = profile.valid_slice()
    s_lat = profile.s[sl]
    u_lat = profile.floor[sl]
    i_last = sl.stop - 1
    x_last = profile.x_min[i_last]
    y_last = profile.origin[0] + s_lat[-1] * profile.direction[0]
    z_last = profile.origin[1] + s_lat[-1] * profile.direction[1]
    xs = np.arange(x_last - x_step, x_floor, -x_step)
    if xs.size:
        u_down = potential_at(config, xs, y_last, z_last)
        s_down = s_lat[-1] + (x_last - xs)
        s = np.concatenate([s_lat, s_down])
        u = np.concatenate([u_lat, u_down])
    else:
        s, u = s_lat, u_lat
    return s, u


def _tunnelling_for(config, profiles, axis, energy, omega_bar):
    """Tunnelling summary for one diagonal, using the weaker of the +- sides."""
    best = None
    for sign in ("+", "-"):
        prof = profiles[f"{sign}{axis}"]
        s, u = _escape_path(config, prof)
        scan = BarrierScan(s, u, energy + k_B * config.atom_temperature,
                           config.species.mass)
        res = tunnelling_probability(scan)
        if best is None or res.probability > best.probability:
            best = res
    rate = tunnelling_rate(best.probability, omega_bar)
    return TunnellingSummary(best.probability, best.action, rate, table_rate(rate))


def characterize(config):
    """Run the full pipeline and return a TrapReport.

    Raises NoTrap when the configuration does not bind atoms.
    """
    position, energy = find_minimum(config)
    omega_x, omega_y, omega_z = vibrational_frequencies(config, position)
    depths = trap_depths(config, position, energy)
    mass = config.species.mass
    omega_bar = {}
    for axis in ("l", "t"):
        scan = diagonal_scan(depths.profiles[f"+{axis}"], depths.profiles[f"-{axis}"])
        omega_bar[axis] = harmonic_fit(scan, mass)
    tun_l = _tunnelling_for(config, depths.profiles, "l", energy, omega_bar["l"])
    tun_t = _tunnelling_for(config, depths.profiles, "t", energy, omega_bar["t"])
    scat = scattering_at_minimum(config, position)
    return TrapReport(
        name=config.name,
        config_sha256=config_sha256(config),
        min_position=position,
        min_energy=energy,
        depth_x=depths.depth_x,
        depth_yz=depths.depth_yz,
        depth_l=depths.depth_l,
        depth_t=depths.depth_t,
        omega_x=omega_x,
        omega_y=omega_y,
        omega_z=omega_z,
        aspect_ratio_xy=omega_x / omega_y,
        omega_bar_l=omega_bar["l"],
        omega_bar_t=omega_bar["t"],
        atom_temperature=config.atom_temperature,
        tunnelling_l=tun_l,
        tunnelling_t=tun_t,
        gamma_scat_blue=scat.gamma_blue,
        gamma_scat_red=scat.gamma_red,
        coherence_time=scat.coherence_time,
    )
