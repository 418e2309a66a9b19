"""Searchless chess toolkit: annotate games with an engine oracle, train a
small transformer on the values, and play greedily from its predictions."""

__version__ = "0.1.0"
