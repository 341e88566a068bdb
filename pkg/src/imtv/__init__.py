"""Interpolated multiple t-values of general level and their generating functions."""

__version__ = "0.1.0"
