"""Analytic surface-intensity model of two crossed guided modes.

Each waveguide carries a Gaussian lateral profile that is guided outside the
crossing square and diffracts freely (Rayleigh-length divergence) across it.
Optional multiplicative fringe factors represent interference between the
crossed modes and partial reflection from the crossing interface.  This
replaces a full field solve; peak values, fringe periods and widths are the
quantitative targets, the rest is qualitative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FringeModelDisabled, NoEvanescentWave

FRINGE_MODELS = ("none", "static", "smeared")
DIFFRACTION_ORIGINS = ("center", "entry")

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModeSpec:
    """One colour's guided mode at the waveguide surface.

    wavelength              vacuum wavelength [m]
    lateral_width           1/e^2 intensity radius w_m [m]
    n_eff_rib               effective index in the guiding rib region
    n_eff_cross             effective index in the crossing region (> 1)
    peak_surface_intensity  I0 of a single waveguide at the surface [W/m^2]
    power                   guided power [W]; derivable from I0 * area
    effective_area          calibrated power-to-intensity area [m^2]
    fringe_model            none | static | smeared
    """

    wavelength: float
    lateral_width: float
    n_eff_rib: float
    n_eff_cross: float
    peak_surface_intensity: float | None = None
    power: float | None = None
    effective_area: float | None = None
    fringe_model: str = "smeared"

    def __post_init__(self):
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.lateral_width <= 0:
            raise ValueError("lateral_width must be positive")
        if self.n_eff_cross <= 1.0:
            raise ValueError("n_eff_cross must exceed 1 (evanescent wave)")
        if self.n_eff_rib <= 1.0:
            raise ValueError("n_eff_rib must exceed 1")
        if self.fringe_model not in FRINGE_MODELS:
            raise ValueError(f"fringe_model must be one of {FRINGE_MODELS}")
        i0, p, a = self.peak_surface_intensity, self.power, self.effective_area
        if i0 is None:
            if p is None or a is None:
                raise ValueError("give peak_surface_intensity or power + effective_area")
            object.__setattr__(self, "peak_surface_intensity", p / a)
        elif i0 < 0:
            raise ValueError("peak_surface_intensity must be >= 0")
        elif p is None and a is not None:
            object.__setattr__(self, "power", i0 * a)
        elif p is not None and a is not None:
            if abs(p - i0 * a) > 1e-6 * max(abs(p), 1e-30):
                raise ValueError("power, effective_area and intensity disagree")


@dataclass(frozen=True)
class CrossedModePair:
    """The same-colour modes of the two crossed waveguides.

    mode_i propagates along y (transverse coordinate z), mode_ii along z.
    rib_width is the width of the crossing waveguide, i.e. the extent of the
    unguided square each mode diffracts across.
    """

    mode_i: ModeSpec
    mode_ii: ModeSpec
    rib_width: float
    relative_detuning: float = 0.0
    interference_amplitude_max: float = 0.15
    reflection_amplitude: float = 0.0
    diffraction_origin: str = "center"

    def __post_init__(self):
        if abs(self.mode_i.wavelength - self.mode_ii.wavelength) > 1e-12 * self.mode_i.wavelength:
            raise ValueError("paired modes must share one wavelength")
        if self.rib_width <= 0:
            raise ValueError("rib_width must be positive")
        if self.relative_detuning < 0:
            raise ValueError("relative_detuning must be >= 0")
        if not 0.0 <= self.interference_amplitude_max <= 1.0:
            raise ValueError("interference_amplitude_max must be in [0, 1]")
        if self.diffraction_origin not in DIFFRACTION_ORIGINS:
            raise ValueError(f"diffraction_origin must be one of {DIFFRACTION_ORIGINS}")

    @property
    def wavelength(self):
        return self.mode_i.wavelength

    @property
    def fringe_model(self):
        return self.mode_i.fringe_model

    @property
    def peak_total(self):
        """Nominal two-mode peak at the cross centre [W/m^2]."""
        return self.mode_i.peak_surface_intensity + self.mode_ii.peak_surface_intensity


def rayleigh_length(mode):
    """Divergence scale across the unguided crossing: pi w^2 n_eff / lambda [m]."""
    return math.pi * mode.lateral_width**2 * mode.n_eff_cross / mode.wavelength


def decay_length_from(wavelength, n_eff):
    """Evanescent field 1/e depth d = lambda / (2 pi sqrt(n_eff^2 - 1)) [m].

    Intensity decays as exp(-2x/d).
    """
    if n_eff <= 1.0:
        raise NoEvanescentWave(f"n_eff = {n_eff} <= 1: no evanescent decay")
    return wavelength / (2.0 * math.pi * math.sqrt(n_eff**2 - 1.0))


def decay_length(mode):
    """Evanescent 1/e field depth of a mode above the crossing region [m]."""
    return decay_length_from(mode.wavelength, mode.n_eff_cross)


def _width_profile(mode, prop, half_width, origin):
    """Lateral 1/e^2 radius along the propagation coordinate.

    Guided (constant) outside |prop| <= half_width, Gaussian-beam divergence
    inside, with the waist at the cross centre or at the entry edge.
    """
    w0 = mode.lateral_width
    z_r = rayleigh_length(mode)
    zeta0 = 0.0 if origin == "center" else -half_width
    w = w0 * np.sqrt(1.0 + ((prop - zeta0) / z_r) ** 2)
    return np.where(np.abs(prop) <= half_width, w, w0)


def _single_mode_intensity(mode, prop, trans, half_width, origin, reflection_amplitude):
    """Surface intensity of one waveguide's mode.

    prop is the coordinate along the guide, trans across it.  The 1/w factor
    conserves the lateral line integral through the diffracting cross region.
    """
    w = _width_profile(mode, prop, half_width, origin)
    term = mode.peak_surface_intensity * (mode.lateral_width / w) * np.exp(
        -2.0 * trans**2 / w**2
    )
    if reflection_amplitude != 0.0:
        upstream = -(prop + half_width)
        period = mode.wavelength / (2.0 * mode.n_eff_rib)
        factor = np.where(
            upstream > 0.0,
            1.0 + reflection_amplitude * np.cos(2.0 * np.pi * upstream / period),
            1.0,
        )
        term = term * factor
    return term


def interference_fringe_factor(pair, t):
    """Fringe multiplier along the transverse diagonal t = (y - z)/sqrt(2).

    Static model: period lambda/(sqrt(2) n_eff_cross), relative amplitude
    ramping linearly from 0 at the centre to the maximum at the corner of the
    crossing square, zero outside it.  The smeared model (fast relative
    detuning washing the pattern out) returns exactly 1.
    """
    if pair.fringe_model == "none":
        raise FringeModelDisabled("fringe model is 'none'")
    t = np.asarray(t, dtype=float)
    if pair.fringe_model == "smeared":
        out = np.ones_like(t)
        return out if out.ndim else float(out)
    period = interference_fringe_period(pair)
    t_corner = pair.rib_width * _SQRT2 / 2.0
    amp = np.where(
        np.abs(t) <= t_corner,
        pair.interference_amplitude_max * np.abs(t) / t_corner,
        0.0,
    )
    out = 1.0 + amp * np.cos(2.0 * np.pi * t / period)
    return out if out.ndim else float(out)


def interference_fringe_period(pair):
    """Interference fringe period along the t diagonal [m]."""
    return pair.wavelength / (_SQRT2 * pair.mode_i.n_eff_cross)


def reflection_fringe_factor(mode, s, amplitude=0.02):
    """Standing-wave multiplier upstream of the cross on the incident side.

    s >= 0 measures distance back along the incident waveguide; the period is
    lambda / (2 n_eff_rib).  Points with s < 0 (inside or past the cross) are
    untouched.
    """
    s = np.asarray(s, dtype=float)
    period = reflection_fringe_period(mode)
    out = np.where(s >= 0.0, 1.0 + amplitude * np.cos(2.0 * np.pi * s / period), 1.0)
    return out if out.ndim else float(out)


def reflection_fringe_period(mode):
    """Reflection fringe period lambda / (2 n_eff_rib) [m]."""
    return mode.wavelength / (2.0 * mode.n_eff_rib)


def surface_intensity(pair, y, z):
    """Combined surface intensity of the crossed pair at (y, z) [W/m^2].

    Mode I runs along y, mode II along z; each contributes a guided Gaussian
    that diffracts across the other guide's rib.  Static fringes multiply the
    sum; reflection fringes multiply each incident arm.
    """
    y, z = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(z, dtype=float))
    half = pair.rib_width / 2.0
    total = _single_mode_intensity(
        pair.mode_i, y, z, half, pair.diffraction_origin, pair.reflection_amplitude
    ) + _single_mode_intensity(
        pair.mode_ii, z, y, half, pair.diffraction_origin, pair.reflection_amplitude
    )
    if pair.fringe_model == "static":
        total = total * interference_fringe_factor(pair, (y - z) / _SQRT2)
    return total if total.ndim else float(total)
