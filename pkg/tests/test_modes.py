import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from crosstrap.errors import FringeModelDisabled, NoEvanescentWave
from crosstrap.modes import (CrossedModePair, ModeSpec, decay_length,
                             decay_length_from, interference_fringe_factor,
                             interference_fringe_period, rayleigh_length,
                             reflection_fringe_factor, reflection_fringe_period,
                             surface_intensity)
from crosstrap.slab import SlabGeometry, rib_neff

# oracles: hand evaluation of d = lambda / (2 pi sqrt(n^2 - 1))
DECAY_850_1347 = 1.4990557174409165e-07
DECAY_720_1386 = 1.1940534178451588e-07


def mode(lam=720e-9, w=1.646e-6, n=1.386, i0=1.0, **kw):
    return ModeSpec(lam, w, n, n, i0, **kw)


def pair_of(m, m2=None, **kw):
    kw.setdefault("rib_width", 2e-6)
    return CrossedModePair(m, m2 or m, **kw)


def test_rayleigh_reference_values():
    assert rayleigh_length(mode(720e-9, 1.646e-6, 1.386)) == pytest.approx(
        16.2e-6, rel=0.02
    )
    assert rayleigh_length(mode(850e-9, 2.03e-6, 1.347)) == pytest.approx(
        20.5e-6, rel=0.02
    )


def test_rayleigh_quadratic_in_width():
    m1 = mode(w=1.0e-6)
    m2 = mode(w=2.0e-6)
    assert rayleigh_length(m2) == pytest.approx(4.0 * rayleigh_length(m1), rel=1e-12)


def test_decay_length_oracle_values():
    assert decay_length_from(850e-9, 1.347) == pytest.approx(DECAY_850_1347, rel=1e-12)
    assert decay_length_from(720e-9, 1.386) == pytest.approx(DECAY_720_1386, rel=1e-12)


def test_decay_length_critical_limit():
    d1 = decay_length_from(850e-9, 1.0 + 1e-6)
    d2 = decay_length_from(850e-9, 1.0 + 1e-9)
    assert d2 > 30.0 * d1 > 1e-3  # grows without bound towards the critical angle
    with pytest.raises(NoEvanescentWave):
        decay_length_from(850e-9, 1.0)


def test_decay_red_longer_than_blue_with_solver_indices():
    geom = SlabGeometry(core_thickness=300e-9, rib_height=15e-9, rib_width=2e-6)
    n_blue, _ = rib_neff(geom, 640e-9)
    n_red, _ = rib_neff(geom, 930e-9)
    assert decay_length_from(930e-9, n_red) > decay_length_from(640e-9, n_blue)


def test_center_peak_superposition():
    p = pair_of(mode(i0=2.0), mode(i0=3.0))
    assert surface_intensity(p, 0.0, 0.0) == pytest.approx(5.0, rel=1e-12)


def test_swap_symmetry_exact():
    p = pair_of(mode(i0=1.5))
    rng = np.random.default_rng(7)
    pts = rng.uniform(-4e-6, 4e-6, size=(50, 2))
    a = surface_intensity(p, pts[:, 0], pts[:, 1])
    b = surface_intensity(p, pts[:, 1], pts[:, 0])
    assert np.array_equal(a, b)


def test_single_waveguide_profile():
    # mode II off: profile is the bare guide, translation-invariant along it
    p = pair_of(mode(i0=1.0), mode(i0=0.0))
    z = np.linspace(-3e-6, 3e-6, 31)
    far1 = surface_intensity(p, np.full_like(z, 5e-6), z)
    far2 = surface_intensity(p, np.full_like(z, 9e-6), z)
    assert np.allclose(far1, far2, rtol=1e-12)
    # Gaussian across the guide
    w = p.mode_i.lateral_width
    assert far1[15] == pytest.approx(1.0, rel=1e-12)
    assert far1[0] == pytest.approx(math.exp(-2.0 * z[0] ** 2 / w**2), rel=1e-9)


def test_crossing_profile_shape():
    # two crossed modes: a centre peak, recovery to one guide's level far out
    m = mode(640e-9, 1.9e-6, 1.3206, i0=1.0)
    p = pair_of(m)
    y = np.array([0.0, 5e-6, 10e-6])
    vals = surface_intensity(p, y, np.zeros_like(y))
    assert vals[0] == pytest.approx(2.0, rel=1e-9)
    assert vals[0] > vals[1]
    # at 10 um the crossing mode's wing is gone: within 10% of the guide peak
    assert vals[2] == pytest.approx(1.0, rel=0.10)


def test_positivity_with_fringes():
    m = mode(fringe_model="static")
    p = pair_of(m, interference_amplitude_max=1.0, reflection_amplitude=0.5)
    rng = np.random.default_rng(3)
    y = rng.uniform(-5e-6, 5e-6, 300)
    z = rng.uniform(-5e-6, 5e-6, 300)
    assert np.all(surface_intensity(p, y, z) >= 0.0)


def test_interference_period_reference():
    p = pair_of(mode(720e-9, 1.646e-6, 1.386, fringe_model="static"))
    assert interference_fringe_period(p) == pytest.approx(371e-9, rel=0.02)


def test_interference_factor_contract():
    p = pair_of(mode(fringe_model="static"))
    assert interference_fringe_factor(p, 0.0) == pytest.approx(1.0, abs=1e-15)
    t_corner = p.rib_width * math.sqrt(2.0) / 2.0
    # amplitude ramps towards the maximum at the corner, zero outside
    period = interference_fringe_period(p)
    t_peak = period * math.floor(t_corner / period)  # last crest inside
    f = interference_fringe_factor(p, t_peak)
    assert abs(f - 1.0) > 0.10
    assert interference_fringe_factor(p, 1.5 * t_corner) == pytest.approx(1.0)
    smeared = pair_of(mode(fringe_model="smeared"))
    assert interference_fringe_factor(smeared, 0.3e-6) == 1.0
    disabled = pair_of(mode(fringe_model="none"))
    with pytest.raises(FringeModelDisabled):
        interference_fringe_factor(disabled, 0.1e-6)


def test_reflection_period_reference():
    m = ModeSpec(850e-9, 2.03e-6, 1.265, 1.265, 1.0)
    assert reflection_fringe_period(m) == pytest.approx(335.9e-9, abs=0.5e-9)
    assert reflection_fringe_period(m) == pytest.approx(336e-9, rel=0.01)


def test_reflection_factor_contract():
    m = mode(720e-9, 1.646e-6, 1.386)
    assert reflection_fringe_factor(m, 1e-6, amplitude=0.0) == pytest.approx(1.0)
    period = m.wavelength / (2.0 * m.n_eff_rib)
    assert reflection_fringe_period(m) == pytest.approx(period, rel=1e-12)
    s = np.linspace(0, 3e-6, 500)
    f = reflection_fringe_factor(m, s, amplitude=0.02)
    assert np.max(f) == pytest.approx(1.02, abs=1e-3)
    assert np.min(f) == pytest.approx(0.98, abs=1e-3)
    # downstream side untouched
    assert reflection_fringe_factor(m, -0.5e-6) == 1.0


def test_power_intensity_area_bookkeeping():
    m = ModeSpec(720e-9, 1.646e-6, 1.386, 1.386,
                 power=25.7e-3, effective_area=1.5576e-12)
    assert m.peak_surface_intensity == pytest.approx(1.65e10, rel=1e-3)
    m2 = ModeSpec(720e-9, 1.646e-6, 1.386, 1.386,
                  peak_surface_intensity=1.65e10, effective_area=1.5576e-12)
    assert m2.power == pytest.approx(25.7e-3, rel=1e-3)
    with pytest.raises(ValueError):
        ModeSpec(720e-9, 1.646e-6, 1.386, 1.386,
                 peak_surface_intensity=1.65e10, power=20e-3,
                 effective_area=1.5576e-12)
    with pytest.raises(ValueError):
        ModeSpec(720e-9, 1.646e-6, 1.386, 1.386)  # nothing to fix I0


def test_lateral_line_integral():
    # integral of the guided profile across the guide equals I0 w sqrt(pi/2)
    m = mode(i0=2.0e9, w=1.9e-6)
    p = pair_of(m, mode(i0=0.0, w=1.9e-6))
    z = np.linspace(-15e-6, 15e-6, 20001)
    profile = surface_intensity(p, np.full_like(z, 6e-6), z)
    integral = trapezoid(profile, z)
    expected = m.peak_surface_intensity * m.lateral_width * math.sqrt(math.pi / 2.0)
    assert integral == pytest.approx(expected, rel=0.01)


def test_pair_validation():
    with pytest.raises(ValueError):
        pair_of(mode(lam=720e-9), mode(lam=850e-9, n=1.347))
    with pytest.raises(ValueError):
        pair_of(mode(), relative_detuning=-1.0)
