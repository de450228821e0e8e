"""Finite-dimensional toolkit for conjugations, model spaces and truncated Toeplitz operators."""

__version__ = "0.1.0"
