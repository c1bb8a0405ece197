import math

import pytest
from scipy.constants import c, hbar, pi

from crosstrap.atomic import (AtomicLine, AtomSpecies, dipole_coefficient, rb87,
                              scattering_coefficient, species_from_dict)
from crosstrap.errors import ZeroDetuning

# reference light-shift coefficients (J m^2/W) for the four trap wavelengths
TABLE1 = {
    720e-9: 4.909e-36,
    850e-9: -6.616e-36,
    640e-9: 1.859e-36,
    930e-9: -3.362e-36,
}

# oracle: direct two-line (D1+D2) evaluation at 850 nm, frozen from a
# hand-computed sum of the per-line formula
ALPHA_TWO_LINE_850 = -6.60923336327499e-36

# oracle: single-line (D2 only, unit weight) scattering coefficient at 850 nm
BETA_D2_ONLY_850 = 1.0564165011914512e-08


def _line(lam_nm, mhz, weight, family="f"):
    return AtomicLine(lam_nm * 1e-9, 2 * pi * mhz * 1e6, weight, family=family)


def _species(lines, mass=1.4431609e-25):
    return AtomSpecies("test", mass, tuple(lines), c3=5.699e-49, lambda_eff=710e-9)


D2 = _line(780.241, 6.0666, 2 / 3, "5P")
D1 = _line(794.979, 5.75, 1 / 3, "5P")
FAR = _line(420.0, 0.3, 2 / 3, "6P")


@pytest.mark.parametrize("lam,ref", sorted(TABLE1.items()))
def test_alpha_matches_reference_table(lam, ref):
    alpha = dipole_coefficient(rb87(), lam)
    assert alpha == pytest.approx(ref, rel=0.15)


def test_alpha_sign_blue_near_resonance():
    # just blue of a line the leading 1/(w - w_i) term is large and positive
    species = _species([D2, FAR])
    prev = None
    for detune_nm in (1.0, 0.1, 0.02):
        alpha = dipole_coefficient(species, (780.241 - detune_nm) * 1e-9)
        assert alpha > 0.0
        if prev is not None:
            assert alpha > prev
        prev = alpha
    assert prev > 1e-33  # diverging towards +inf as the detuning closes


def test_alpha_two_line_oracle():
    species = _species([D2, D1])
    assert dipole_coefficient(species, 850e-9) == pytest.approx(
        ALPHA_TWO_LINE_850, rel=1e-12
    )


def test_alpha_sign_rule():
    species = rb87()
    shortest = min(ln.wavelength for ln in species.lines)
    longest = max(ln.wavelength for ln in species.lines)
    for lam in (300e-9, 340e-9, shortest - 5e-9):
        assert dipole_coefficient(species, lam) > 0.0
    for lam in (longest + 5e-9, 850e-9, 1200e-9, 1900e-9):
        assert dipole_coefficient(species, lam) < 0.0


def test_alpha_homogeneous_in_linewidths():
    species = rb87()
    doubled = _species(
        [
            AtomicLine(ln.wavelength, 2.0 * ln.natural_linewidth,
                       ln.branching_weight, family=ln.family)
            for ln in species.lines
        ],
        mass=species.mass,
    )
    for lam in (640e-9, 850e-9):
        assert dipole_coefficient(doubled, lam) == pytest.approx(
            2.0 * dipole_coefficient(species, lam), rel=1e-12
        )


def test_beta_positive():
    species = rb87()
    for lam in (500e-9, 640e-9, 760e-9, 850e-9, 1500e-9):
        assert scattering_coefficient(species, lam) > 0.0


def test_beta_single_line_oracle():
    species = _species([
        AtomicLine(780.241e-9, 2 * pi * 6.0666e6, 1.0, family="a"),
        _line(420.0, 1e-9, 1e-9, "b"),  # negligible second line
    ])
    beta = scattering_coefficient(species, 850e-9)
    assert beta == pytest.approx(BETA_D2_ONLY_850, rel=1e-6)
    assert beta * 1e9 == pytest.approx(10.564165011914511, rel=1e-6)


@pytest.mark.parametrize("pair", [(820e-9, 900e-9), (830e-9, 1100e-9),
                                  (770e-9, 700e-9), (760e-9, 650e-9)])
def test_beta_falls_faster_than_alpha(pair):
    # lam1 closer to the D lines than lam2, both on the same side
    lam1, lam2 = pair
    species = rb87()
    ratio_alpha = abs(dipole_coefficient(species, lam1)
                      / dipole_coefficient(species, lam2))
    ratio_beta = (scattering_coefficient(species, lam1)
                  / scattering_coefficient(species, lam2))
    assert ratio_alpha < ratio_beta


def test_zero_detuning_guard():
    species = rb87()
    with pytest.raises(ZeroDetuning):
        dipole_coefficient(species, 780.241e-9)
    with pytest.raises(ZeroDetuning):
        dipole_coefficient(species, 780.2455e-9)
    with pytest.raises(ZeroDetuning):
        scattering_coefficient(species, 794.979e-9)
    dipole_coefficient(species, 780.26e-9)  # just outside the guard band


def test_family_weight_validation():
    with pytest.raises(ValueError):
        _species([_line(780.0, 6.0, 0.7, "5P"), _line(795.0, 5.7, 0.4, "5P")])
    with pytest.raises(ValueError):
        _species([D2])  # fewer than two lines


def test_species_data_file_layout():
    species = rb87()
    assert species.mass == pytest.approx(1.4431609e-25, rel=1e-6)
    assert species.c3 == pytest.approx(5.699e-49)
    assert species.lambda_eff == pytest.approx(710e-9)
    assert len(species.lines) == 5
    doublet = [ln for ln in species.lines if ln.family == "5P"]
    assert sum(ln.branching_weight for ln in doublet) == pytest.approx(1.0)


def test_species_from_dict_roundtrip():
    doc = {
        "name": "toy",
        "mass_kg": 1e-25,
        "c3_J_m3": 1e-49,
        "lambda_eff_nm": 700.0,
        "lines": [
            {"wavelength_nm": 780.0, "linewidth_2pi_MHz": 6.0, "weight": 0.5},
            {"wavelength_nm": 420.0, "linewidth_2pi_MHz": 0.3, "weight": 0.5},
        ],
    }
    species = species_from_dict(doc)
    assert species.lines[0].natural_linewidth == pytest.approx(2 * pi * 6e6)
    assert species.lambda_eff == pytest.approx(700e-9)
