"""Two-colour evanescent-wave micro-traps above crossed rib waveguides."""

from .atomic import (AtomicLine, AtomSpecies, dipole_coefficient, load_species,
                     rb87, scattering_coefficient)
from .errors import (ConfigError, FitFailed, FringeModelDisabled, ModeCutoff,
                     NoEvanescentWave, NonPhysicalPoint, NotAMinimum, NoTrap,
                     OutOfRange, TrapModelError, ZeroDetuning)
from .modes import (CrossedModePair, ModeSpec, decay_length, decay_length_from,
                    interference_fringe_factor, interference_fringe_period,
                    rayleigh_length, reflection_fringe_factor,
                    reflection_fringe_period, surface_intensity)
from .potential import (TrapConfig, grid_scan, line_scan, potential_at,
                        potential_x_derivative)
from .slab import SlabGeometry, rib_neff, silica_index, slab_neff
from .analysis import (find_minimum, harmonic_fit, minima_map, trap_depths,
                       vibrational_frequencies)
from .wkb import BarrierScan, tunnelling_probability, tunnelling_rate
from .scattering import CoherenceReport, coherence_time, scattering_at_minimum
from .report import TrapReport, characterize
from .config_io import (config_sha256, load_config, save_config,
                        trap_config_from_dict, trap_config_to_dict)
from .presets import list_presets, load_preset, preset_path

__version__ = "0.1.0"
