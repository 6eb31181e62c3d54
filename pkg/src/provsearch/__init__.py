"""Semantic provenance search over art-auction records."""

__version__ = "0.1.0"
