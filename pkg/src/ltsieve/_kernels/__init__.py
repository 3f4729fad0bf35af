"""Backend selection for the hot type-search loop.

The compiled kernel is used when it was built and the inputs fit in
64-bit arithmetic; otherwise the pure-Python kernel runs. Both return
identical results.
"""
from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Sequence

from . import _typesearch_py
from ._typesearch_py import SearchLimit

try:
    from . import _typesearch as _compiled  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _compiled = None

# keeps every intermediate product (j * nb, q * q, ...) far from 2**63
_SAFE_BOUND = 1 << 30

_active = "cython" if _compiled is not None else "python"

__all__ = ["SearchLimit", "search", "available_backends", "active_backend", "use_backend"]


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def active_backend() -> str:
    return _active


@contextmanager
def use_backend(name: str) -> Iterator[None]:
    """Temporarily force one backend (used by tests and the benchmark)."""
    global _active
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available; have {available_backends()}")
    previous = _active
    _active = name
    try:
        yield
    finally:
        _active = previous


def search(k: int, x: int, top: int, budget: int, steps: Sequence[int],
           max_solutions: int, max_nodes: int, first_only: bool = False):
    # a step above k only ever admits d_i = 0, so clamping keeps semantics
    steps = [min(s, k + 1) for s in steps]
    fits = max(k, x, top, budget) < _SAFE_BOUND
    if _active == "cython" and fits:
        return _compiled.search(k, x, top, budget, steps,
                                min(max_solutions, 1 << 62), min(max_nodes, 1 << 62), first_only)
    return _typesearch_py.search(k, x, top, budget, steps, max_solutions, max_nodes, first_only)
