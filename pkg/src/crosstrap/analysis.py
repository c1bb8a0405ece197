"""Trap characterisation: minimum, depths, frequencies, escape channels.

The workhorse pattern is a "column minimisation": at a fixed surface point
(y, z) the potential is scanned along x and the deepest interior local
minimum is taken.  Scanning columns along an escape direction yields the
floor of that channel; where no interior minimum survives the column has
"escaped" (the surface attraction has swallowed the barrier).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import g as g_N, k as k_B
from scipy.optimize import minimize_scalar

from .errors import FitFailed, NoTrap, NotAMinimum
from .grids import GridAxis, PotentialGrid
from .potential import AXIS_DIRECTIONS, potential_at, potential_optical_only

_SQRT2 = math.sqrt(2.0)

# default scan windows
X_COARSE = (50e-9, 600e-9)
X_COARSE_STEP = 10e-9
YZ_COARSE_STEP = 100e-9
X_COLUMN = (50e-9, 800e-9)
X_COLUMN_STEP = 2e-9
CHANNEL_STEP = 50e-9
POSITION_TOL = 1e-10  # 0.1 nm


@dataclass
class ChannelProfile:
    """Per-column minima along one escape direction from the trap centre.

    s increases outward from the centre; floor/x_min hold the column minimum
    energy [J] and height [m]; escaped marks columns with no interior
    minimum.  direction is a lateral unit vector (dy, dz).
    """

    name: str
    s: np.ndarray
    floor: np.ndarray
    x_min: np.ndarray
    escaped: np.ndarray
    origin: tuple
    direction: tuple

    def valid_slice(self):
        """Columns up to (excluding) the first escaped one."""
        hits = np.flatnonzero(self.escaped)
        stop = hits[0] if hits.size else len(self.s)
        return slice(0, stop)

    @property
    def saddle(self):
        """Highest floor before escape [J] (the channel's escape barrier)."""
        sl = self.valid_slice()
        if sl.stop == 0:
            raise NoTrap(f"channel {self.name} escapes immediately")
        return float(np.max(self.floor[sl]))


def _column_minima(u, x):
    """Deepest interior local minimum of each row of u along x.

    Returns (floor, x_min, escaped); refines with a parabolic vertex through
    the three bracketing samples.  u has shape (n_columns, n_x).
    """
    inner = u[:, 1:-1]
    is_min = (inner < u[:, :-2]) & (inner <= u[:, 2:])
    any_min = is_min.any(axis=1)
    masked = np.where(is_min, inner, np.inf)
    j = np.argmin(masked, axis=1) + 1  # index into full x
    j = np.where(any_min, j, 1)
    rows = np.arange(u.shape[0])
    um, ul, ur = u[rows, j], u[rows, j - 1], u[rows, j + 1]
    denom = ul - 2.0 * um + ur
    shift = np.where(denom > 0.0, 0.5 * (ul - ur) / np.maximum(denom, 1e-300), 0.0)
    h = x[1] - x[0]
    x_ref = x[j] + shift * h
    # parabolic estimate of the vertex value
    u_ref = um - 0.125 * (ul - ur) ** 2 / np.maximum(denom, 1e-300)
    u_ref = np.where(denom > 0.0, u_ref, um)
    floor = np.where(any_min, u_ref, np.nan)
    x_min = np.where(any_min, x_ref, np.nan)
    return floor, x_min, ~any_min


def find_minimum(config, x_range=X_COARSE, x_step=X_COARSE_STEP,
                 yz_step=YZ_COARSE_STEP, yz_halfspan=None):
    """Global trap minimum: coarse 3D grid scan, then coordinate descent.

    Returns ((x, y, z), energy).  Raises NoTrap when no interior minimum
    with U < 0 exists (pure attraction or atoms crashing to the surface).
    """
    if yz_halfspan is None:
        yz_halfspan = config.geometry.rib_width
    x = np.arange(x_range[0], x_range[1] + 0.5 * x_step, x_step)
    lat = np.arange(-yz_halfspan, yz_halfspan + 0.5 * yz_step, yz_step)
    u = potential_at(config, x[None, :], lat[:, None, None], lat[None, :, None])
    ny = nz = len(lat)
    floor, x_ref, escaped = _column_minima(u.reshape(ny * nz, len(x)), x)
    # columns whose x-scan has an interior local minimum are trap candidates;
    # everywhere else atoms fall to the surface or drift away
    valid = ~escaped & (floor < 0.0)
    if not valid.any():
        raise NoTrap("no surface point holds an interior minimum with U < 0 "
                     "(atoms crash to the surface or are unbound)")
    vmin = float(np.min(floor[valid]))
    cands = np.flatnonzero(valid & (floor <= vmin))
    # deterministic tie-break: smallest x, then smallest |y|+|z|
    key = [(x_ref[n], abs(lat[n // nz]) + abs(lat[n % nz]),
            lat[n // nz], lat[n % nz]) for n in cands]
    n_best = cands[min(range(len(cands)), key=lambda i: key[i])]
    pos = [float(x_ref[n_best]), float(lat[n_best // nz]), float(lat[n_best % nz])]
    brackets = [2.0 * x_step, 2.0 * yz_step, 2.0 * yz_step]
    lo_x = max(x_range[0] * 0.5, 1e-9)
    for _ in range(60):
        moved = 0.0
        for axis in range(3):
            p = pos[axis]
            a, b = p - brackets[axis], p + brackets[axis]
            if axis == 0:
                a = max(a, lo_x)

            def along(v, axis=axis):
                q = list(pos)
                q[axis] = v
                return potential_at(config, *q)

            res = minimize_scalar(along, bounds=(a, b), method="bounded",
                                  options={"xatol": POSITION_TOL / 4.0})
            moved = max(moved, abs(res.x - p))
            pos[axis] = float(res.x)
        if moved < POSITION_TOL / 2.0:
            break
    energy = potential_at(config, *pos)
    if not energy < 0.0:
        raise NoTrap(f"refined minimum energy {energy:.3e} J >= 0")
    for axis, h in ((0, 1e-9), (1, 20e-9), (2, 20e-9)):
        q_hi, q_lo = list(pos), list(pos)
        q_hi[axis] += h
        q_lo[axis] -= h
        curv = potential_at(config, *q_hi) - 2.0 * energy + potential_at(config, *q_lo)
        if not curv > 0.0:
            raise NoTrap(f"refined point is not a strict minimum along axis {axis}")
    return tuple(pos), float(energy)


def vibrational_frequencies(config, position, step_x=1e-9, step_yz=20e-9):
    """(omega_x, omega_y, omega_z) [rad/s] from Richardson-extrapolated
    central second differences at the minimum."""
    omegas = []
    for axis, h in ((0, step_x), (1, step_yz), (2, step_yz)):
        def second_diff(hh):
            q_hi, q_lo = list(position), list(position)
            q_hi[axis] += hh
            q_lo[axis] -= hh
            u0 = potential_at(config, *position)
            return (potential_at(config, *q_hi) - 2.0 * u0
                    + potential_at(config, *q_lo)) / hh**2

        d1, d2 = second_diff(h), second_diff(h / 2.0)
        k_spring = (4.0 * d2 - d1) / 3.0
        if not k_spring > 0.0:
            raise NotAMinimum(f"non-positive curvature along axis {axis}")
        omegas.append(math.sqrt(k_spring / config.species.mass))
    return tuple(omegas)


def channel_profile(config, axis_name, sign, origin_yz, s_max, s_step=CHANNEL_STEP,
                    x_range=X_COLUMN, x_step=X_COLUMN_STEP):
    """Column-minima profile along +-y, +-z, +-l or +-t from the trap centre."""
    _, dy, dz = AXIS_DIRECTIONS[axis_name]
    dy, dz = sign * dy, sign * dz
    s = np.arange(0.0, s_max + 0.5 * s_step, s_step)
    y = origin_yz[0] + s * dy
    z = origin_yz[1] + s * dz
    x = np.arange(x_range[0], x_range[1] + 0.5 * x_step, x_step)
    u = potential_at(config, x[None, :], y[:, None], z[:, None])
    floor, x_min, escaped = _column_minima(u, x)
    name = f"{'+' if sign > 0 else '-'}{axis_name}"
    return ChannelProfile(name, s, floor, x_min, escaped,
                          tuple(origin_yz), (dy, dz))


@dataclass
class DepthReport:
    """Trap depths [J] and the channel profiles they came from."""

    depth_x: float
    depth_yz: float
    depth_l: float
    depth_t: float
    profiles: dict = field(default_factory=dict)


def trap_depths(config, position, energy, s_step=CHANNEL_STEP):
    """Depths along x, the waveguide channels (y, z) and the diagonals (l, t).

    depth_x is the escape barrier to large x with gravity excluded; the
    channel depths are the lowest escape saddle minus the minimum energy.
    """
    x0, y0, z0 = position
    # escape upward: walk out until the optical terms are < 1% of |U_min|
    x_far = x0
    for _ in range(2000):
        x_far += 50e-9
        if abs(potential_optical_only(config, x_far, y0, z0)) < 0.01 * abs(energy):
            break
    m_g = config.gravity_sign * config.species.mass * g_N
    u_far = potential_at(config, x_far, y0, z0) - m_g * x_far
    depth_x = u_far - (energy - m_g * x0)

    w_max = max(config.blue.mode_i.lateral_width, config.red.mode_i.lateral_width)
    s_max = config.geometry.rib_width / 2.0 + 4.0 * w_max + 1e-6
    profiles = {}
    for axis_name in ("y", "z", "l", "t"):
        for sign in (1, -1):
            prof = channel_profile(config, axis_name, sign, (y0, z0), s_max, s_step)
            profiles[prof.name] = prof
    depth_yz = min(profiles[k].saddle for k in ("+y", "-y", "+z", "-z")) - energy
    depth_l = min(profiles[k].saddle for k in ("+l", "-l")) - energy
    depth_t = min(profiles[k].saddle for k in ("+t", "-t")) - energy
    return DepthReport(float(depth_x), float(depth_yz), float(depth_l),
                       float(depth_t), profiles)


def minima_map(config, y_window, z_window, samples, x_range=X_COLUMN,
               x_step=X_COLUMN_STEP):
    """Per-column minima over a (y, z) window.

    Returns (U_min grid [J], x_min grid [m]); escaped columns hold NaN.
    """
    ny, nz = samples
    y = np.linspace(y_window[0], y_window[1], ny)
    z = np.linspace(z_window[0], z_window[1], nz)
    x = np.arange(x_range[0], x_range[1] + 0.5 * x_step, x_step)
    floor = np.empty((ny, nz))
    xmin = np.empty((ny, nz))
    for i in range(ny):  # chunk rows to bound memory
        u = potential_at(config, x[None, :], np.full_like(z, y[i])[:, None], z[:, None])
        f, xm, esc = _column_minima(u, x)
        floor[i] = f
        xmin[i] = xm
    axes = (
        GridAxis("y", y[0], (y[-1] - y[0]) / (ny - 1) if ny > 1 else 0.0, ny),
        GridAxis("z", z[0], (z[-1] - z[0]) / (nz - 1) if nz > 1 else 0.0, nz),
    )
    meta = {"kind": "minima_map"}
    return (
        PotentialGrid(axes, floor, dict(meta, quantity="potential")),
        PotentialGrid(axes, xmin, dict(meta, quantity="x_min"), quantity="length"),
    )


def harmonic_fit(scan, mass, energy_cut=None, window=None):
    """Average oscillation frequency from a least-squares parabola [rad/s].

    Fits U ~ U0 + (m/2) w^2 (s - s0)^2 over the contiguous region around the
    scan minimum below `energy_cut` (default: the lower of the two barrier
    tops, i.e. the classical turning points at the escape energy).
    """
    s = scan.axes[0].values
    u = np.asarray(scan.values, dtype=float)
    good = np.isfinite(u)
    s, u = s[good], u[good]
    if len(u) < 3:
        raise FitFailed("scan too short for a harmonic fit")
    i0 = int(np.argmin(u))
    if i0 in (0, len(u) - 1):
        raise FitFailed("scan has no interior minimum")
    if energy_cut is None:
        energy_cut = min(float(np.max(u[: i0 + 1])), float(np.max(u[i0:])))
    lo = i0
    while lo > 0 and u[lo - 1] <= energy_cut:
        lo -= 1
    hi = i0
    while hi < len(u) - 1 and u[hi + 1] <= energy_cut:
        hi += 1
    if window is not None:
        sel = (s >= window[0]) & (s <= window[1])
        sel[:lo] = False
        sel[hi + 1:] = False
    else:
        sel = np.zeros(len(u), dtype=bool)
        sel[lo:hi + 1] = True
    if np.count_nonzero(sel) < 3:
        raise FitFailed("fewer than 3 points inside the fit window")
    coeffs = np.polyfit(s[sel], u[sel], 2)
    curvature = 2.0 * coeffs[0]
    if not curvature > 0.0:
        raise FitFailed(f"fitted curvature {curvature:.3e} <= 0")
    return math.sqrt(curvature / mass)


def diagonal_scan(profile_plus, profile_minus):
    """Stitch +- channel profiles into one symmetric 1D PotentialGrid.

    The axis is the signed diagonal coordinate; columns beyond the escape
    fold are trimmed.
    """
    sl_p = profile_plus.valid_slice()
    sl_m = profile_minus.valid_slice()
    s_m = -profile_minus.s[sl_m][::-1]
    u_m = profile_minus.floor[sl_m][::-1]
    s_p = profile_plus.s[sl_p]
    u_p = profile_plus.floor[sl_p]
    s = np.concatenate([s_m[:-1], s_p])  # drop duplicate centre column
    u = np.concatenate([u_m[:-1], u_p])
    step = profile_plus.s[1] - profile_plus.s[0]
    name = profile_plus.name.lstrip("+-")
    axis = GridAxis(name, float(s[0]), float(step), len(s))
    return PotentialGrid((axis,), u, {"kind": f"{name}_minima_profile"})
