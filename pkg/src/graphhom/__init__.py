"""Exact homology of Kontsevich graph complexes and their hairy variants."""

from __future__ import annotations

__version__ = "0.1.0"
