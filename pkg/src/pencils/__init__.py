"""Orbits of pairs of symmetric bilinear forms, hyperelliptic 2-descent
constructions and local classification helpers, in exact arithmetic."""

__version__ = "0.1.0"
