"""Trap configuration files: JSON with explicit unit-suffixed field names.

A config names the geometry, the two colour modes (one spec per colour,
replicated onto both identical waveguides), the atom species and a few
environment switches.  Missing effective indices are filled from the slab
solver at the cross-region thickness.  The canonical dict form also feeds
the config hash that output files carry.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

from scipy.constants import pi

from .atomic import load_species, species_from_dict
from .errors import ConfigError
from .modes import CrossedModePair, ModeSpec
from .potential import TrapConfig
from .slab import SlabGeometry, slab_neff


def _get(d, key, colour, default=None, required=False):
    if key in d and d[key] is not None:
        return d[key]
    if required:
        raise ConfigError("missing required field", field=f"{colour}.{key}")
    return default


def _pair_from_dict(d, colour, geometry):
    wavelength = _get(d, "wavelength_nm", colour, required=True) * 1e-9
    width = _get(d, "lateral_width_um", colour, required=True) * 1e-6
    n_rib = _get(d, "n_eff_rib", colour)
    n_cross = _get(d, "n_eff_cross", colour)
    if n_rib is None or n_cross is None:
        filled = slab_neff(geometry, wavelength, "TE", 0,
                           thickness=geometry.core_thickness + geometry.rib_height)
        n_rib = n_rib if n_rib is not None else filled
        n_cross = n_cross if n_cross is not None else filled
    intensity = _get(d, "intensity_W_per_m2", colour)
    power = _get(d, "power_mW", colour)
    area = _get(d, "effective_area_um2", colour)
    try:
        mode = ModeSpec(
            wavelength=wavelength,
            lateral_width=width,
            n_eff_rib=n_rib,
            n_eff_cross=n_cross,
            peak_surface_intensity=intensity,
            power=power * 1e-3 if power is not None else None,
            effective_area=area * 1e-12 if area is not None else None,
            fringe_model=_get(d, "fringe_model", colour, default="smeared"),
        )
        return CrossedModePair(
            mode_i=mode,
            mode_ii=mode,
            rib_width=geometry.rib_width,
            relative_detuning=_get(d, "relative_detuning_Hz", colour, default=0.0),
            interference_amplitude_max=_get(d, "interference_amplitude_max", colour,
                                            default=0.15),
            reflection_amplitude=_get(d, "reflection_amplitude", colour, default=0.0),
            diffraction_origin=_get(d, "diffraction_origin", colour, default="center"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc), field=colour) from exc


def trap_config_from_dict(doc, name=None):
    """Build a TrapConfig from the JSON layout; field-level diagnostics."""
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    sp = doc.get("species", "rb87")
    species = load_species(sp) if isinstance(sp, str) else species_from_dict(sp)
    geo = doc.get("geometry")
    if not isinstance(geo, dict):
        raise ConfigError("missing geometry object", field="geometry")
    try:
        geometry = SlabGeometry(
            core_thickness=geo["core_thickness_nm"] * 1e-9,
            rib_height=geo.get("rib_height_nm", 0.0) * 1e-9,
            rib_width=geo["rib_width_um"] * 1e-6,
            core_index=geo.get("core_index"),
            cladding_index=geo.get("cladding_index", 1.0),
        )
    except KeyError as exc:
        raise ConfigError(f"missing field {exc}", field="geometry") from exc
    except ValueError as exc:
        raise ConfigError(str(exc), field="geometry") from exc
    for colour in ("blue", "red"):
        if colour not in doc:
            raise ConfigError("missing colour section", field=colour)
    blue = _pair_from_dict(doc["blue"], "blue", geometry)
    red = _pair_from_dict(doc["red"], "red", geometry)
    return TrapConfig(
        name=doc.get("name", name or "config"),
        geometry=geometry,
        blue=blue,
        red=red,
        species=species,
        gravity_sign=doc.get("gravity_sign", 1),
        atom_temperature=doc.get("atom_temperature_uK", 1.0) * 1e-6,
    )


def _species_to_dict(species):
    return {
        "name": species.name,
        "mass_kg": species.mass,
        "c3_J_m3": species.c3,
        "lambda_eff_nm": species.lambda_eff * 1e9,
        "lines": [
            {
                "label": ln.label,
                "family": ln.family,
                "wavelength_nm": ln.wavelength * 1e9,
                "linewidth_2pi_MHz": ln.natural_linewidth / (2.0 * pi) / 1e6,
                "weight": ln.branching_weight,
            }
            for ln in species.lines
        ],
    }


def _pair_to_dict(pair):
    m = pair.mode_i
    return {
        "wavelength_nm": m.wavelength * 1e9,
        "lateral_width_um": m.lateral_width * 1e6,
        "n_eff_rib": m.n_eff_rib,
        "n_eff_cross": m.n_eff_cross,
        "intensity_W_per_m2": m.peak_surface_intensity,
        "power_mW": m.power * 1e3 if m.power is not None else None,
        "effective_area_um2": (
            m.effective_area * 1e12 if m.effective_area is not None else None
        ),
        "fringe_model": m.fringe_model,
        "relative_detuning_Hz": pair.relative_detuning,
        "interference_amplitude_max": pair.interference_amplitude_max,
        "reflection_amplitude": pair.reflection_amplitude,
        "diffraction_origin": pair.diffraction_origin,
    }


def trap_config_to_dict(config):
    """Canonical dict form (full species data embedded, SI-suffixed units)."""
    geo = config.geometry
    return {
        "name": config.name,
        "species": _species_to_dict(config.species),
        "geometry": {
            "core_thickness_nm": geo.core_thickness * 1e9,
            "rib_height_nm": geo.rib_height * 1e9,
            "rib_width_um": geo.rib_width * 1e6,
            "core_index": geo.core_index,
            "cladding_index": geo.cladding_index,
        },
        "gravity_sign": config.gravity_sign,
        "atom_temperature_uK": config.atom_temperature * 1e6,
        "blue": _pair_to_dict(config.blue),
        "red": _pair_to_dict(config.red),
    }


def config_sha256(config):
    """Deterministic hash of the canonical config dict."""
    payload = json.dumps(trap_config_to_dict(config), sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def load_config(path):
    """Read a config file, with line diagnostics for malformed JSON."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return trap_config_from_dict(doc, name=path.stem)


def save_config(config, path):
    with open(path, "w", newline="\n") as fh:
        json.dump(trap_config_to_dict(config), fh, indent=2, sort_keys=True)
        fh.write("\n")
