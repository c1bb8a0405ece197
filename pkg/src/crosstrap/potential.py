"""Total trapping potential above the crossed-waveguide surface.

U(x, y, z) = alpha_r I_r(y, z) exp(-2x/d_r) + alpha_b I_b(y, z) exp(-2x/d_b)
             - C3 (lambda_eff/2pi) / (x^3 (x + lambda_eff/2pi))
             + gravity_sign * m g x

with x the height above the surface and (y, z) along the two waveguides.
The surface term interpolates between van der Waals (x^-3) and retarded
(x^-4) attraction; the optical terms are the two-colour evanescent fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import g as g_N, k as k_B

from .atomic import dipole_coefficient
from .errors import ConfigError, NonPhysicalPoint
from .grids import GridAxis, PotentialGrid
from .modes import decay_length, surface_intensity

_SQRT2 = math.sqrt(2.0)

# direction unit vectors of the named scan axes
AXIS_DIRECTIONS = {
    "x": (1.0, 0.0, 0.0),
    "y": (0.0, 1.0, 0.0),
    "z": (0.0, 0.0, 1.0),
    "l": (0.0, 1.0 / _SQRT2, 1.0 / _SQRT2),
    "t": (0.0, 1.0 / _SQRT2, -1.0 / _SQRT2),
}

PLANES = ("y0x", "z0x", "t0x", "l0x", "y0z")


@dataclass(frozen=True)
class TrapConfig:
    """Full description of one crossed-waveguide trap."""

    name: str
    geometry: object  # SlabGeometry
    blue: object  # CrossedModePair
    red: object  # CrossedModePair
    species: object  # AtomSpecies
    gravity_sign: int = 1
    atom_temperature: float = 1e-6  # K, trapped-atom energy scale for tunnelling

    def __post_init__(self):
        if self.gravity_sign not in (-1, 0, 1):
            raise ConfigError("gravity_sign must be -1, 0 or +1", field="gravity_sign")
        if not self.blue.wavelength < self.red.wavelength:
            raise ConfigError(
                "blue wavelength must be shorter than red", field="blue.wavelength_nm"
            )
        if self.atom_temperature <= 0:
            raise ConfigError("atom_temperature must be positive", field="atom_temperature_uK")


def optical_coefficients(config):
    """(alpha_b, alpha_r, d_b, d_r) for the two colours."""
    alpha_b = dipole_coefficient(config.species, config.blue.wavelength)
    alpha_r = dipole_coefficient(config.species, config.red.wavelength)
    d_b = decay_length(config.blue.mode_i)
    d_r = decay_length(config.red.mode_i)
    return alpha_b, alpha_r, d_b, d_r


def surface_potentials(config, y, z):
    """(U_b(y, z), U_r(y, z)) at the surface, x = 0 [J]."""
    alpha_b = dipole_coefficient(config.species, config.blue.wavelength)
    alpha_r = dipole_coefficient(config.species, config.red.wavelength)
    return (
        alpha_b * surface_intensity(config.blue, y, z),
        alpha_r * surface_intensity(config.red, y, z),
    )


def casimir_polder(species, x):
    """Surface attraction term [J]; x in metres, vectorised."""
    lam_bar = species.lambda_eff / (2.0 * math.pi)
    return -(species.c3 * lam_bar) / (x**3 * (x + lam_bar))


def _check_positive_x(x):
    if np.any(np.asarray(x) <= 0.0):
        raise NonPhysicalPoint("potential is defined for x > 0 only")


def potential_at(config, x, y, z):
    """Total potential [J] at height x over surface point (y, z).

    Accepts scalars or broadcastable arrays; raises NonPhysicalPoint if any
    sample has x <= 0.
    """
    x = np.asarray(x, dtype=float)
    _check_positive_x(x)
    u_b, u_r = surface_potentials(config, y, z)
    _, _, d_b, d_r = optical_coefficients(config)
    u = (
        u_r * np.exp(-2.0 * x / d_r)
        + u_b * np.exp(-2.0 * x / d_b)
        + casimir_polder(config.species, x)
        + config.gravity_sign * config.species.mass * g_N * x
    )
    return u if u.ndim else float(u)


def potential_optical_only(config, x, y, z):
    """Just the two optical terms [J] (used for barrier bookkeeping)."""
    x = np.asarray(x, dtype=float)
    _check_positive_x(x)
    u_b, u_r = surface_potentials(config, y, z)
    _, _, d_b, d_r = optical_coefficients(config)
    u = u_r * np.exp(-2.0 * x / d_r) + u_b * np.exp(-2.0 * x / d_b)
    return u if u.ndim else float(u)


def potential_x_derivative(config, x, y, z):
    """Analytic dU/dx [J/m] of the closed form."""
    x = np.asarray(x, dtype=float)
    _check_positive_x(x)
    u_b, u_r = surface_potentials(config, y, z)
    _, _, d_b, d_r = optical_coefficients(config)
    lam_bar = config.species.lambda_eff / (2.0 * math.pi)
    cp = config.species.c3 * lam_bar * (4.0 * x + 3.0 * lam_bar) / (
        x**4 * (x + lam_bar) ** 2
    )
    du = (
        -2.0 / d_r * u_r * np.exp(-2.0 * x / d_r)
        - 2.0 / d_b * u_b * np.exp(-2.0 * x / d_b)
        + cp
        + config.gravity_sign * config.species.mass * g_N
    )
    return du if du.ndim else float(du)


def _axis_name(direction):
    for name, vec in AXIS_DIRECTIONS.items():
        if np.allclose(direction, vec, atol=1e-12):
            return name
    return "s"


def line_scan(config, start, direction, length, samples, metadata=None):
    """Uniform 1D scan from `start` along `direction` (unit vector).

    Returns a PotentialGrid whose axis coordinate is the position projected
    on the scan direction (so an x scan carries absolute x, a diagonal scan
    carries the diagonal coordinate).
    """
    if samples < 2:
        raise ConfigError("line_scan needs at least 2 samples", field="samples")
    if length <= 0:
        raise ConfigError("line_scan length must be positive", field="length")
    direction = np.asarray(direction, dtype=float)
    norm = math.sqrt(float(direction @ direction))
    if norm == 0.0:
        raise ConfigError("direction must be a nonzero vector", field="direction")
    direction = direction / norm
    s = np.linspace(0.0, length, samples)
    x0, y0, z0 = (float(v) for v in start)
    x = x0 + s * direction[0]
    y = y0 + s * direction[1]
    z = z0 + s * direction[2]
    values = potential_at(config, x, y, z)
    name = _axis_name(direction)
    offsets = {"x": x0, "y": y0, "z": z0,
               "l": (y0 + z0) / _SQRT2, "t": (y0 - z0) / _SQRT2}
    start_coord = offsets.get(name, 0.0)
    step = length / (samples - 1)
    meta = {
        "kind": "line",
        "start_m": [x0, y0, z0],
        "direction": [float(v) for v in direction],
    }
    if metadata:
        meta.update(metadata)
    axis = GridAxis(name, start_coord, step, samples)
    return PotentialGrid((axis,), values, meta)


def _plane_points(plane, h, v, fixed):
    """Map plane coordinates (h, v) plus the fixed offset to (x, y, z)."""
    if plane == "y0x":
        return v, h, np.full_like(h, fixed)
    if plane == "z0x":
        return v, np.full_like(h, fixed), h
    if plane == "t0x":
        # y = (l + t)/sqrt2, z = (l - t)/sqrt2 with l = fixed
        return v, (fixed + h) / _SQRT2, (fixed - h) / _SQRT2
    if plane == "l0x":
        return v, (h + fixed) / _SQRT2, (h - fixed) / _SQRT2
    if plane == "y0z":
        return np.full_like(h, fixed), h, v
    raise ConfigError(f"unknown plane {plane!r}", field="plane")


def grid_scan(config, plane, horizontal, vertical, samples, fixed=0.0, metadata=None):
    """2D scan over one of the named planes.

    horizontal/vertical are (min, max) in metres for the two plane axes;
    samples is (n_horizontal, n_vertical).  `fixed` is the out-of-plane
    coordinate: the in-plane offset for the x-planes, the height x for y0z.
    """
    if plane not in PLANES:
        raise ConfigError(f"plane must be one of {PLANES}", field="plane")
    n_h, n_v = samples
    if n_h < 2 or n_v < 2:
        raise ConfigError("grid_scan needs at least 2 samples per axis", field="samples")
    (h0, h1), (v0, v1) = horizontal, vertical
    if h1 <= h0 or v1 <= v0:
        raise ConfigError("grid_scan extents must be increasing", field="extent")
    h = np.linspace(h0, h1, n_h)
    v = np.linspace(v0, v1, n_v)
    hh, vv = np.meshgrid(h, v, indexing="ij")
    x, y, z = _plane_points(plane, hh, vv, fixed)
    values = potential_at(config, x, y, z)
    h_name, v_name = plane[0], plane[2]
    meta = {"kind": "plane", "plane": plane, "fixed_m": float(fixed)}
    if metadata:
        meta.update(metadata)
    axes = (
        GridAxis(h_name, h0, (h1 - h0) / (n_h - 1), n_h),
        GridAxis(v_name, v0, (v1 - v0) / (n_v - 1), n_v),
    )
    return PotentialGrid(axes, values, meta)


def to_microkelvin(energy_J):
    """Energy [J] -> temperature units [uK]."""
    return np.asarray(energy_J) / (k_B * 1e-6)
