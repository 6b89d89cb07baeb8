"""Kernel backend selection: compiled extension with a pure-NumPy fallback.

The compiled module is preferred when it imported cleanly; set the
environment variable ``HEATCOUPLE_BACKEND`` to ``python`` or ``cython``
before import to force a choice, or call :func:`use` at runtime.
Solver modules look kernels up as ``backend.kernels.<fn>`` so a switch
takes effect everywhere at once.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels_cy  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _kernels_cy = None

_BACKENDS = {_kernels_py.BACKEND: _kernels_py}
if _kernels_cy is not None:
    _BACKENDS[_kernels_cy.BACKEND] = _kernels_cy


def available() -> tuple[str, ...]:
    """Names of the importable kernel backends."""
    return tuple(sorted(_BACKENDS))


def use(name: str) -> None:
    """Switch the active kernel backend."""
    global kernels
    try:
        kernels = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {available()}") from None


def active() -> str:
    """Name of the backend currently in use."""
    return kernels.BACKEND


def _initial():
    forced = os.environ.get("HEATCOUPLE_BACKEND")
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"HEATCOUPLE_BACKEND={forced!r} is not importable; available: {available()}")
        return _BACKENDS[forced]
    return _BACKENDS.get("cython", _kernels_py)


kernels = _initial()
