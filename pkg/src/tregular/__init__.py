"""Exact and numeric toolkit for T-regular functions over real *-algebras."""

__version__ = "0.1.0"
