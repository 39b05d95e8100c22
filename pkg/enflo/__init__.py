"""Enflo - modified Enflo spaces and the non-embeddability obstruction."""

__version__ = "0.1.0"
