"""Acceptance gate: every criterion asserted at its stated tolerance.

Each check prints one PASS/FAIL line (visible with -s or on failure) and
then asserts, so a red criterion is loud in both places.
"""

import dataclasses
import math

import numpy as np
import pytest
from scipy.constants import hbar, k as k_B

from crosstrap.analysis import find_minimum, minima_map
from crosstrap.atomic import dipole_coefficient, rb87
from crosstrap.modes import (CrossedModePair, ModeSpec,
                             interference_fringe_period, rayleigh_length,
                             reflection_fringe_period)
from crosstrap.potential import potential_at, potential_x_derivative
from crosstrap.scattering import coherence_time
from crosstrap.slab import SlabGeometry, slab_neff
from crosstrap.wkb import BarrierScan, tunnelling_probability

UK = k_B * 1e-6
RB_MASS = 1.4431609e-25


def check(name, value, target, tol_rel=None, tol_abs=None, upper=None):
    if upper is not None:
        ok = value < upper
        detail = f"{value:.3e} < {upper:.3e}"
    elif tol_abs is not None:
        ok = abs(value - target) <= tol_abs
        detail = f"{value:.6g} vs {target:.6g} +- {tol_abs:.3g}"
    else:
        ok = abs(value - target) <= tol_rel * abs(target)
        detail = f"{value:.6g} vs {target:.6g} +- {tol_rel * 100:.0f}%"
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_rayleigh_lengths():
    z_blue = rayleigh_length(ModeSpec(720e-9, 1.646e-6, 1.386, 1.386, 1.0))
    z_red = rayleigh_length(ModeSpec(850e-9, 2.03e-6, 1.347, 1.347, 1.0))
    check("rayleigh length 720 nm", z_blue, 16.2e-6, tol_rel=0.02)
    check("rayleigh length 850 nm", z_red, 20.5e-6, tol_rel=0.02)


def test_alpha_coefficients():
    species = rb87()
    targets = ((720e-9, 4.909e-36), (850e-9, -6.616e-36),
               (640e-9, 1.859e-36), (930e-9, -3.362e-36))
    for lam, ref in targets:
        check(f"alpha({lam * 1e9:.0f} nm)",
              dipole_coefficient(species, lam), ref, tol_rel=0.15)


def test_fringe_periods():
    mode = ModeSpec(720e-9, 1.646e-6, 1.386, 1.386, 1.0, fringe_model="static")
    pair = CrossedModePair(mode, mode, rib_width=2e-6)
    check("interference period 720 nm", interference_fringe_period(pair),
          371e-9, tol_rel=0.02)
    red = ModeSpec(850e-9, 2.03e-6, 1.265, 1.265, 1.0)
    check("reflection period 850 nm", reflection_fringe_period(red),
          336e-9, tol_rel=0.01)


def test_slab_solver():
    membrane = SlabGeometry(core_thickness=300e-9, rib_height=0.0, rib_width=2e-6)
    check("TE0 membrane index 850 nm", slab_neff(membrane, 850e-9, "TE", 0),
          1.265, tol_rel=0.015)


def test_coherence_combination_rule():
    published = (("C1", 1.44, 0.65, 0.48), ("C2", 0.31, 0.67, 1.0),
                 ("C3", 0.31, 0.66, 1.03), ("C4", 0.14, 0.5, 1.56))
    for name, gb, gr, tau in published:
        check(f"coherence time {name}", coherence_time(gb, gr), tau,
              tol_rel=0.05)


def test_end_to_end_configurations(reports):
    reps = reports["reports"]
    c1 = reps["C1"]
    check("C1 |U_min|", -c1.min_energy / UK, 90.7, tol_rel=0.25)
    check("C1 x_min", c1.min_position[0], 208e-9, tol_abs=60e-9)
    check("C1 f_x", c1.omega_x / (2 * math.pi), 192e3, tol_rel=0.25)
    check("C1 depth ratio x/yz", c1.depth_x / c1.depth_yz, 2.0, tol_rel=0.10)
    check("C1 aspect ratio", c1.aspect_ratio_xy, 30.8, tol_rel=0.30)
    check("C2 x_min", reps["C2"].min_position[0], 239e-9, tol_abs=60e-9)
    check("C3 f_x", reps["C3"].omega_x / (2 * math.pi), 93.9e3, tol_rel=0.25)
    check("C4 x_min", reps["C4"].min_position[0], 262.4e-9, tol_abs=60e-9)
    check("C4 coherence time", reps["C4"].coherence_time, 1.56, tol_rel=0.20)
    elapsed = reports["elapsed_s"]
    check("all presets runtime (s)", elapsed, None, upper=60.0)


def test_wkb_criteria(reports):
    # analytic square barrier
    v0, e = 2.0 * UK, 1.0 * UK
    step = 0.01e-9
    s = np.arange(0.0, 150e-9 + 0.5 * step, step)
    u = np.where((s >= 50e-9) & (s <= 100e-9), v0, 0.0)
    res = tunnelling_probability(BarrierScan(s, u, e, RB_MASS))
    analytic = math.exp(-2 * 50e-9 * math.sqrt(2 * RB_MASS * (v0 - e)) / hbar)
    check("square barrier vs analytic (rel err)",
          abs(res.probability - analytic) / analytic, None, upper=1e-3)
    reps = reports["reports"]
    check("C1 diagonal rate at 4 uK", reps["C1"].tunnelling_l.rate, None,
          upper=3e-7)
    check("C2 diagonal rate at 1 uK", reps["C2"].tunnelling_l.rate, None,
          upper=1e-2)
    check("C3 diagonal rate at 0.5 uK", reps["C3"].tunnelling_l.rate, None,
          upper=1e-4)


def test_property_suite(presets):
    config = presets["C1"]

    # analytic gradient vs Richardson finite differences at 1e-6 relative
    worst = 0.0
    for x in np.linspace(100e-9, 600e-9, 11):
        exact = potential_x_derivative(config, x, 0.0, 0.0)
        h = 0.5e-9
        d1 = (potential_at(config, x + h, 0, 0)
              - potential_at(config, x - h, 0, 0)) / (2 * h)
        d2 = (potential_at(config, x + h / 2, 0, 0)
              - potential_at(config, x - h / 2, 0, 0)) / h
        worst = max(worst, abs((4 * d2 - d1) / 3 - exact) / abs(exact))
    check("gradient analytic vs FD (rel err)", worst, None, upper=1e-6)

    # y <-> z symmetry of the potential and of the minima map
    lat = np.linspace(-2.5e-6, 2.5e-6, 21)
    u = potential_at(config, 200e-9, lat[:, None], lat[None, :])
    sym_pot = float(np.max(np.abs(u - u.T)))
    check("potential y<->z asymmetry (J)", sym_pot, None, upper=1e-40)
    u_grid, _ = minima_map(config, (-2e-6, 2e-6), (-2e-6, 2e-6), (21, 21))
    vals = u_grid.values
    both = ~np.isnan(vals) & ~np.isnan(vals.T)
    sym_map = float(np.max(np.abs(vals[both] - vals.T[both])))
    nan_mismatch = int(np.sum(np.isnan(vals) != np.isnan(vals.T)))
    check("minima map y<->z asymmetry (J)", sym_map + nan_mismatch, None,
          upper=1e-37)

    # linearity in the intensities
    def scaled(s):
        def scale(pair):
            m = dataclasses.replace(
                pair.mode_i,
                peak_surface_intensity=pair.mode_i.peak_surface_intensity * s,
                power=None, effective_area=None)
            return dataclasses.replace(pair, mode_i=m, mode_ii=m)
        return dataclasses.replace(config, blue=scale(config.blue),
                                   red=scale(config.red))

    dark = scaled(0.0)
    p = (220e-9, 0.4e-6, -0.1e-6)
    u1 = potential_at(config, *p) - potential_at(dark, *p)
    u3 = potential_at(scaled(3.0), *p) - potential_at(dark, *p)
    check("linearity in intensity (rel err)", abs(u3 - 3.0 * u1) / abs(u3),
          None, upper=1e-12)

    # refined minimum cannot exceed any coarse trap sample
    (x0, y0, z0), energy = find_minimum(config)
    xs = np.linspace(60e-9, 580e-9, 200)
    cols = potential_at(config, xs, y0, z0)
    interior = [cols[j] for j in range(1, len(xs) - 1)
                if cols[j] < cols[j - 1] and cols[j] <= cols[j + 1]]
    check("refined <= brute-force minimum (J)", energy - min(interior), None,
          upper=1e-40)

    # gravity toggle moves the minimum by < 1%
    x_plus = find_minimum(dataclasses.replace(config, gravity_sign=1))[0][0]
    x_minus = find_minimum(dataclasses.replace(config, gravity_sign=-1))[0][0]
    check("gravity toggle shift (rel)", abs(x_plus - x_minus) / x_plus, None,
          upper=0.01)

    # tunnelling monotonic in atom energy
    s = np.linspace(0.0, 400e-9, 1001)
    bump = 5.0 * UK * np.exp(-((s - 200e-9) / 80e-9) ** 2)
    probs = [tunnelling_probability(
        BarrierScan(s, bump, e_uk * UK, RB_MASS)).probability
        for e_uk in (4.0, 2.0, 1.0, 0.5)]
    ok = all(a > b for a, b in zip(probs, probs[1:]))
    print(f"{'PASS' if ok else 'FAIL'}  tunnelling monotonic in energy: {probs}")
    assert ok
