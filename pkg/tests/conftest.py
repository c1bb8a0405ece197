import time

import pytest

from crosstrap import characterize, load_preset
from crosstrap.presets import PRESET_NAMES


@pytest.fixture(scope="session")
def presets():
    return {name: load_preset(name) for name in PRESET_NAMES}


@pytest.fixture(scope="session")
def reports(presets):
    """Characterisation of every bundled preset, plus total wall time."""
    out = {}
    t0 = time.perf_counter()
    for name, config in presets.items():
        out[name] = characterize(config)
    elapsed = time.perf_counter() - t0
    return {"reports": out, "elapsed_s": elapsed}
