"""Engine backend selection.

The compiled kernel is optional; the pure-Python engine is always
available and bit-identical. Selection order: explicit argument, the
POLISIM_BACKEND environment variable, then whatever imported.
"""
from __future__ import annotations

import os

from . import _engine_py

try:
    from . import _kernels
except ImportError:
    _kernels = None

_ENV_VAR = "POLISIM_BACKEND"


def available_backends() -> tuple[str, ...]:
    if _kernels is not None:
        return ("compiled", "python")
    return ("python",)


def resolve(name: str | None = None):
    """Return the engine module for `name` (or the default)."""
    if name is None:
        name = os.environ.get(_ENV_VAR, "auto")
    if name in ("auto", None):
        return _kernels if _kernels is not None else _engine_py
    if name == "python":
        return _engine_py
    if name == "compiled":
        if _kernels is None:
            raise RuntimeError("compiled backend requested but extension is not built")
        return _kernels
    raise ValueError(f"unknown backend {name!r} (expected 'auto', 'python' or 'compiled')")


ACTIVE_BACKEND = "compiled" if resolve() is not _engine_py else "python"
