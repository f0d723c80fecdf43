"""Exact-arithmetic extremal-ray computations for saturated tensor cones."""

__version__ = "0.1.0"
