"""evo2048: playout-search 2048 with evolving heuristic value functions."""

__version__ = "0.1.0"
