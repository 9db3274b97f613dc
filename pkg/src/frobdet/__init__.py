"""Exact computation and factorization of semigroup determinants."""

__version__ = "0.1.0"
