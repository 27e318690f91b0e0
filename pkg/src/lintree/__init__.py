"""Multiplicity lists and inverse eigenvalue problems for linear trees."""

__version__ = "0.1.0"
