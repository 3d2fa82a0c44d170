"""Generalized edge corona products and exact invariant solvers."""

__version__ = "0.1.0"
