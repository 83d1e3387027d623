"""Isoperimetric, spectral and Littlewood-norm invariants of Cayley graphs."""

__version__ = "0.1.0"
