"""Exact computation with finite residuated lattices and hoops."""

__version__ = "0.1.0"
