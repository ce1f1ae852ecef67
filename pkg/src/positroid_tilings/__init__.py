"""Exact combinatorics of positroid tilings of the hypersimplex."""

__version__ = "0.1.0"
