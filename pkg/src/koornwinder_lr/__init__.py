"""Koornwinder polynomials of type (C^vee_n, C_n) and their LR coefficients."""

__version__ = "0.1.0"
