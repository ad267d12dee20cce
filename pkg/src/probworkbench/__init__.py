"""Finite-dimensional classical and quantum probability workbench."""

__version__ = "0.1.0"
