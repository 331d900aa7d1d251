"""Theta operators at t=1, tiered trees, Tutte polynomials, sandpiles and polyominoes."""

__version__ = "0.1.0"
