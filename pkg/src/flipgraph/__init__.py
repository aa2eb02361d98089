"""Noncrossing arcs, biclosed sets and flip lattices of embedded trees."""

from .embedded_tree import Corner, EmbeddedTree, load_tree

__all__ = ["Corner", "EmbeddedTree", "load_tree"]
__version__ = "0.1.0"
