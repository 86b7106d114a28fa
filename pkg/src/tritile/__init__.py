"""Exact tools for triangle tilings: cyclotomic arithmetic, tiling verification and case certificates."""

__version__ = "0.1.0"
