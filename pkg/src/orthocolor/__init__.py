"""Orthogonal vector colorings: exact chromatic machinery, Kochen-Specker sets,
and a numerical search for low-dimensional orthogonal edge colorings."""

__version__ = "0.1.0"
