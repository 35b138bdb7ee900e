"""Exact computations with the Hopf structures on kZ_n/J^2 and their derived categories."""

__version__ = "0.1.0"
