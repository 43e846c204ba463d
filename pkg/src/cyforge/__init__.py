"""Exact combinatorics and period computations for conifold Calabi-Yau threefolds."""

__version__ = "0.1.0"
