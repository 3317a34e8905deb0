"""Exact arithmetic and tiling tools for the octagonal polygon exchange family."""

__version__ = "0.1.0"
