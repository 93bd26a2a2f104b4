"""Spectral sets and tiles in Z_{p^n} x Z_{p^m}."""

__version__ = "0.1.0"
