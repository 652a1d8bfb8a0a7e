"""Figure reproduction from flra sweep CSVs."""

from plotkit.spec import FigureSpec, PlotkitError
from plotkit.figures import render

__all__ = ["FigureSpec", "PlotkitError", "render"]
