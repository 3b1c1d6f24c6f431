"""Exact-arithmetic construction and verification of multi-indexed
(q-)Racah polynomials, their duals, and band-diagonal solvable
Hamiltonians."""

from .backend import BACKEND, rat, rat_from_str, rat_to_str

__all__ = ["BACKEND", "rat", "rat_from_str", "rat_to_str"]

__version__ = "0.1.0"
