"""Exact tools for Anosov polynomials, unit relation lattices, small Galois
groups, graded nilpotent Lie algebras, and the rational forms built from them."""

__version__ = "0.1.0"
