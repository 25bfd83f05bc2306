"""Exact and heuristic tools for spanning-tree leaf minimisation and path
covers of cubic graphs."""

__version__ = "0.1.0"
