"""Exact-arithmetic cutting-plane toolkit for the linear ordering problem."""

__version__ = "0.1.0"
