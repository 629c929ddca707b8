"""Kernel backend selection.

The hot sampling loops exist twice: numba-compiled (default when numba
imports) and pure numpy.  Set ``CPRANK_BACKEND`` to ``numba`` or
``numpy`` to force one; both produce identical samples for the same
seed.  ``benchmarks/bench_backends.py`` compares their speed.
"""

from __future__ import annotations

import os
from types import ModuleType

__all__ = ["ENV_VAR", "backend_name", "kernels", "numba_available"]

ENV_VAR = "CPRANK_BACKEND"

_cache: dict[str, ModuleType] = {}


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def backend_name() -> str:
    raw = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if raw == "auto":
        return "numba" if numba_available() else "numpy"
    if raw == "numba":
        if not numba_available():
            raise RuntimeError("CPRANK_BACKEND=numba but numba is not importable")
        return "numba"
    if raw == "numpy":
        return "numpy"
    raise ValueError(f"invalid {ENV_VAR}={raw!r}; expected 'numba', 'numpy' or 'auto'")


def kernels(name: str | None = None) -> ModuleType:
    """The kernel module for ``name`` (default: the configured backend)."""
    name = name or backend_name()
    mod = _cache.get(name)
    if mod is None:
        if name == "numba":
            from . import kernels_numba as mod
        elif name == "numpy":
            from . import kernels_numpy as mod
        else:
            raise ValueError(f"unknown backend {name!r}")
        _cache[name] = mod
    return mod
