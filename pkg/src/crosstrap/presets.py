"""Bundled trap configurations C1-C4.

The preset files are shipped verbatim (byte-stable across releases) and
encode the four benchmark configurations: geometry, wavelengths, surface
intensities, calibrated mode widths and frozen effective indices.
"""

from __future__ import annotations

import json
from importlib import resources

from .config_io import trap_config_from_dict
from .errors import ConfigError

PRESET_NAMES = ("C1", "C2", "C3", "C4")


def preset_path(name):
    """Traversable pointing at the bundled preset JSON."""
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; choose from {PRESET_NAMES}",
                          field="preset")
    return resources.files("crosstrap.data.presets").joinpath(f"{name}.json")


def preset_text(name):
    """Raw bytes-stable preset file contents."""
    return preset_path(name).read_text()


def load_preset(name):
    """Load a bundled preset as a TrapConfig."""
    return trap_config_from_dict(json.loads(preset_text(name)), name=name)


def list_presets():
    return list(PRESET_NAMES)
