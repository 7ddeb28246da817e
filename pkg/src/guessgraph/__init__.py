"""Guessing numbers of graphs: exact codes, entropy LP bounds, extremal and saturation searches."""

__version__ = "0.1.0"
