"""Certified weak-diameter colorings of graph powers."""

__version__ = "0.1.0"
