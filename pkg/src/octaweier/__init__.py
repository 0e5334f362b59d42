"""Octahedral genus-3 surface: mesh, map, group, curve and hyperbolic charts."""

__version__ = "0.1.0"
