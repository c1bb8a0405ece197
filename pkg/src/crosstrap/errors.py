"""Exception types shared across the package.

The CLI maps ConfigError to exit code 2 and NoTrap to exit code 3;
everything else is an ordinary failure.
"""


class TrapModelError(Exception):
    """Base class for model-level failures."""


class ConfigError(TrapModelError):
    """Bad or inconsistent configuration input.

    `field` names the offending config entry (dotted path) when known.
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        prefix = ""
        if field:
            prefix = f"[{field}] "
        elif line is not None:
            prefix = f"[line {line}] "
        super().__init__(prefix + message)


class ZeroDetuning(TrapModelError):
    """Laser wavelength falls inside the guard band of an atomic line."""


class OutOfRange(TrapModelError):
    """Input outside a model's validity window."""


class ModeCutoff(TrapModelError):
    """No guided slab mode of the requested order exists."""


class NoEvanescentWave(TrapModelError):
    """Effective index <= 1: the field is not evanescent in vacuum."""


class FringeModelDisabled(TrapModelError):
    """Interference fringes requested but the fringe model is 'none'."""


class NonPhysicalPoint(TrapModelError):
    """Potential evaluated at x <= 0 (inside or below the surface)."""


class NoTrap(TrapModelError):
    """No interior potential minimum with U < 0 exists."""


class NotAMinimum(TrapModelError):
    """Curvature is non-positive at the supposed minimum."""


class FitFailed(TrapModelError):
    """Harmonic fit produced a non-positive curvature."""
