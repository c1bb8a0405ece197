"""Atomic line data and light-shift coefficients.

The ground-state optical dipole potential is U = alpha(lambda) * I and the
spontaneous photon scattering rate is Gamma = beta(lambda) * I.  Both
coefficients are weighted sums over the strongest ground-state transitions;
alpha keeps the counter-rotating term, beta keeps only the near-resonant one
(it falls off one power of detuning faster, so the far term is negligible).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from scipy.constants import c, hbar, pi

from .errors import ConfigError, ZeroDetuning

# Guard band around each line inside which the perturbative formulas are
# meaningless (non-perturbative regime).
DEFAULT_GUARD_BAND = 0.01e-9  # m


@dataclass(frozen=True)
class AtomicLine:
    """One ground-state transition.

    wavelength         vacuum wavelength [m]
    natural_linewidth  partial decay rate of the transition [rad/s]
    branching_weight   weight in the scalar light-shift sum; (2J'+1)/(3(2J+1))
                       for an alkali nS1/2 -> nP_J' line
    """

    wavelength: float
    natural_linewidth: float
    branching_weight: float
    label: str = ""
    family: str = ""

    def __post_init__(self):
        if self.wavelength <= 0:
            raise ValueError("line wavelength must be positive")
        if self.natural_linewidth <= 0:
            raise ValueError("natural_linewidth must be positive")
        if not 0.0 < self.branching_weight <= 1.0:
            raise ValueError("branching_weight must be in (0, 1]")

    @property
    def angular_frequency(self):
        """Transition angular frequency [rad/s]."""
        return 2.0 * pi * c / self.wavelength


@dataclass(frozen=True)
class AtomSpecies:
    """Atom data needed by the trap model.

    mass        [kg]
    lines       ordered transitions, strongest detuning contributors first
    c3          van der Waals coefficient against the relevant surface [J m^3]
    lambda_eff  reduced transition wavelength of the surface interaction [m]
    """

    name: str
    mass: float
    lines: tuple[AtomicLine, ...]
    c3: float
    lambda_eff: float

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.c3 <= 0:
            raise ValueError("c3 must be positive")
        if self.lambda_eff <= 0:
            raise ValueError("lambda_eff must be positive")
        if len(self.lines) < 2:
            raise ValueError("need at least two atomic lines")
        sums = {}
        for ln in self.lines:
            if ln.family:
                sums[ln.family] = sums.get(ln.family, 0.0) + ln.branching_weight
        for fam, total in sums.items():
            if total > 1.0 + 1e-9:
                raise ValueError(f"weights of family {fam} sum to {total} > 1")


def _check_detuning(species, wavelength, guard_band):
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    for ln in species.lines:
        if abs(wavelength - ln.wavelength) < guard_band:
            raise ZeroDetuning(
                f"{wavelength * 1e9:.4f} nm is within {guard_band * 1e9} nm "
                f"of the {ln.label or ln.wavelength} line"
            )


def dipole_coefficient(species, wavelength, guard_band=DEFAULT_GUARD_BAND):
    """Dipole-potential coefficient alpha [J m^2/W] so that U = alpha * I.

    alpha = sum_i 3 pi c^2 Gamma_i b_i / (2 w_i^3) * (1/(w-w_i) - 1/(w+w_i)),
    negative for light red-detuned from the dominant lines (attractive),
    positive for blue detuning (repulsive).
    """
    _check_detuning(species, wavelength, guard_band)
    omega = 2.0 * pi * c / wavelength
    alpha = 0.0
    for ln in species.lines:
        w_i = ln.angular_frequency
        pref = 3.0 * pi * c**2 * ln.natural_linewidth * ln.branching_weight / (2.0 * w_i**3)
        alpha += pref * (1.0 / (omega - w_i) - 1.0 / (omega + w_i))
    return alpha


def scattering_coefficient(species, wavelength, guard_band=DEFAULT_GUARD_BAND):
    """Photon scattering coefficient beta [s^-1/(W/m^2)]: Gamma_scat = beta * I.

    Near-resonant term only: beta = sum_i 3 pi c^2 Gamma_i^2 b_i /
    (2 hbar w_i^3) * (w - w_i)^-2.  Always >= 0.
    """
    _check_detuning(species, wavelength, guard_band)
    omega = 2.0 * pi * c / wavelength
    beta = 0.0
    for ln in species.lines:
        w_i = ln.angular_frequency
        pref = (
            3.0 * pi * c**2 * ln.natural_linewidth**2 * ln.branching_weight
            / (2.0 * hbar * w_i**3)
        )
        beta += pref / (omega - w_i) ** 2
    return beta


def species_from_dict(data, name="species"):
    """Build an AtomSpecies from the JSON data-file layout."""
    try:
        lines = tuple(
            AtomicLine(
                wavelength=ln["wavelength_nm"] * 1e-9,
                natural_linewidth=2.0 * pi * ln["linewidth_2pi_MHz"] * 1e6,
                branching_weight=ln["weight"],
                label=ln.get("label", ""),
                family=ln.get("family", ""),
            )
            for ln in data["lines"]
        )
        return AtomSpecies(
            name=data.get("name", name),
            mass=data["mass_kg"],
            lines=lines,
            c3=data["c3_J_m3"],
            lambda_eff=data["lambda_eff_nm"] * 1e-9,
        )
    except KeyError as exc:
        raise ConfigError(f"missing species field {exc}", field=name) from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad species data: {exc}", field=name) from exc


def load_species(source="rb87"):
    """Load a species from a bundled name (e.g. 'rb87') or a JSON file path."""
    path = Path(str(source))
    if path.suffix == ".json" and path.exists():
        data = json.loads(path.read_text())
        return species_from_dict(data, name=path.stem)
    ref = resources.files("crosstrap.data").joinpath(f"{source}.json")
    if not ref.is_file():
        raise ConfigError(f"unknown species {source!r}", field="species")
    data = json.loads(ref.read_text())
    return species_from_dict(data, name=str(source))


def rb87():
    """The bundled rubidium-87 five-line data set."""
    return load_species("rb87")
