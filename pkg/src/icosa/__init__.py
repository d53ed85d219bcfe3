"""Exact computations for the icosahedral arrangement of 15 lines over Q(w)."""

__version__ = "0.1.0"
