"""Symmetric-slab mode solver and fused-silica dispersion.

A suspended membrane is a symmetric slab (vacuum on both sides).  Effective
indices come from bracketed bisection on the transcendental dispersion
relation; the rib structure is handled with the effective-index shortcut of
solving the vertical slab at the two local thicknesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ModeCutoff, OutOfRange

# Malitson fused-silica Sellmeier coefficients (lambda in micrometres).
_SELLMEIER_B = (0.6961663, 0.4079426, 0.8974794)
_SELLMEIER_L2 = (0.0684043**2, 0.1162414**2, 9.896161**2)

SILICA_VALID = (0.2e-6, 2.0e-6)

RESIDUAL_TOL = 1e-12
_MAX_BISECT = 200


@dataclass(frozen=True)
class SlabGeometry:
    """Suspended rib waveguide cross-section.

    core_thickness  membrane thickness h [m]
    rib_height      extra thickness under the rib [m]
    rib_width       lateral rib width [m]
    core_index      override for the core index; None = fused silica
    cladding_index  surrounding index (vacuum = 1)
    """

    core_thickness: float
    rib_height: float = 0.0
    rib_width: float = 2e-6
    core_index: float | None = None
    cladding_index: float = 1.0

    def __post_init__(self):
        if self.core_thickness <= 0:
            raise ValueError("core_thickness must be positive")
        if self.rib_height < 0:
            raise ValueError("rib_height must be >= 0")
        if self.rib_width <= 0:
            raise ValueError("rib_width must be positive")
        if self.cladding_index < 1.0:
            raise ValueError("cladding_index must be >= 1")
        if self.core_index is not None and self.core_index <= self.cladding_index:
            raise ValueError("core_index must exceed cladding_index")

    def index_at(self, wavelength):
        """Core index at the given vacuum wavelength [m]."""
        if self.core_index is not None:
            return self.core_index
        return silica_index(wavelength)


def silica_index(wavelength):
    """Fused-silica refractive index (Sellmeier), wavelength in metres."""
    lo, hi = SILICA_VALID
    if not lo < wavelength < hi:
        raise OutOfRange(
            f"silica model valid for {lo * 1e6:.1f}-{hi * 1e6:.1f} um, "
            f"got {wavelength * 1e6:.3f} um"
        )
    lam2 = (wavelength * 1e6) ** 2
    n2 = 1.0
    for b, l2 in zip(_SELLMEIER_B, _SELLMEIER_L2):
        n2 += b * lam2 / (lam2 - l2)
    return math.sqrt(n2)


def _residual(u, v_half, mode_order, index_ratio_sq):
    """Dispersion residual in the normalised transverse variable u.

    Even/odd orders collapse onto u*tan(u - m*pi/2) = w with
    u^2 + w^2 = (V/2)^2; TM scales w by (n_core/n_clad)^2.
    """
    w = math.sqrt(max(v_half * v_half - u * u, 0.0))
    return u * math.tan(u - mode_order * math.pi / 2.0) - index_ratio_sq * w


def slab_neff(geometry, wavelength, polarization="TE", mode_order=0, thickness=None):
    """Effective index of a symmetric-slab mode.

    thickness overrides geometry.core_thickness (used by rib_neff).
    Raises ModeCutoff when the requested order is not guided.
    """
    if polarization not in ("TE", "TM"):
        raise ValueError("polarization must be 'TE' or 'TM'")
    if mode_order < 0:
        raise ValueError("mode_order must be >= 0")
    h = geometry.core_thickness if thickness is None else thickness
    n_core = geometry.index_at(wavelength)
    n_clad = geometry.cladding_index
    k0 = 2.0 * math.pi / wavelength
    v_half = 0.5 * k0 * h * math.sqrt(n_core**2 - n_clad**2)
    ratio = 1.0 if polarization == "TE" else (n_core / n_clad) ** 2

    lo = mode_order * math.pi / 2.0
    if v_half <= lo:
        raise ModeCutoff(
            f"no {polarization}{mode_order} mode: V/2 = {v_half:.4f} <= {lo:.4f}"
        )
    hi = min((mode_order + 1) * math.pi / 2.0, v_half)
    # Dispersion is negative just above the lower bracket edge and positive
    # at the upper one, so plain bisection always converges.
    eps = 1e-15 * max(1.0, hi)
    a, b = lo + eps, hi - eps
    fa = _residual(a, v_half, mode_order, ratio)
    fb = _residual(b, v_half, mode_order, ratio)
    if fa > 0.0 or fb < 0.0:
        raise ModeCutoff(f"no root for {polarization}{mode_order} in bracket")
    u = 0.5 * (a + b)
    for _ in range(_MAX_BISECT):
        u = 0.5 * (a + b)
        fu = _residual(u, v_half, mode_order, ratio)
        if abs(fu) < RESIDUAL_TOL:
            break
        if fu > 0.0:
            b = u
        else:
            a = u
    kappa = 2.0 * u / h
    return math.sqrt(n_core**2 - (kappa / k0) ** 2)


def dispersion_residual_neff(geometry, wavelength, n_eff, polarization="TE",
                             mode_order=0, thickness=None):
    """Dispersion residual expressed as a function of n_eff (for root checks)."""
    h = geometry.core_thickness if thickness is None else thickness
    n_core = geometry.index_at(wavelength)
    k0 = 2.0 * math.pi / wavelength
    v_half = 0.5 * k0 * h * math.sqrt(n_core**2 - geometry.cladding_index**2)
    u = 0.5 * k0 * h * math.sqrt(max(n_core**2 - n_eff**2, 0.0))
    ratio = 1.0 if polarization == "TE" else (n_core / geometry.cladding_index) ** 2
    return _residual(u, v_half, mode_order, ratio)


def rib_neff(geometry, wavelength, polarization="TE", mode_order=0):
    """(n_eff under the rib, n_eff of the outer slab).

    Effective-index method: vertical solves at thickness h + h_rib and at h.
    The under-rib value always exceeds the slab value for h_rib > 0.
    """
    n_rib = slab_neff(
        geometry, wavelength, polarization, mode_order,
        thickness=geometry.core_thickness + geometry.rib_height,
    )
    n_slab = slab_neff(geometry, wavelength, polarization, mode_order)
    return n_rib, n_slab
