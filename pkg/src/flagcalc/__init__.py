"""Exact Lie-theoretic invariants of flag varieties and their parabolic geometries."""

__version__ = "0.1.0"
