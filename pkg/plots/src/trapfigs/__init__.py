"""Figure rendering for exported crossed-waveguide trap grids."""

from .reader import Grid, SchemaError, load_grid
from .render import KINDS, FigureSpec, render

__version__ = "0.1.0"
