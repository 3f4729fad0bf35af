"""Exact-arithmetic sieve for line-transitive point-imprimitive linear spaces."""
from __future__ import annotations

from .model import IntersectionType, ParameterSet

__version__ = "0.1.0"

__all__ = ["IntersectionType", "ParameterSet", "__version__"]
