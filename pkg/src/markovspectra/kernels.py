"""Backend selection for the hot spectral kernels.

The compiled Cython core is preferred when present; the numpy fallback
implements the identical algorithms.  Selection happens at import time and
can be forced with the environment variable ``MARKOVSPECTRA_BACKEND``
(``compiled`` or ``python``) or temporarily with :func:`use_backend`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:  # pragma: no cover - depends on build environment
    _kernels_cy = None

_BACKENDS = {"python": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["compiled"] = _kernels_cy

_forced = os.environ.get("MARKOVSPECTRA_BACKEND")
if _forced is not None:
    if _forced not in _BACKENDS:
        raise ImportError(
            f"MARKOVSPECTRA_BACKEND={_forced!r} requested but only "
            f"{sorted(_BACKENDS)} are available"
        )
    _active_name = _forced
else:
    _active_name = "compiled" if "compiled" in _BACKENDS else "python"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return _active_name


def active():
    """The module implementing the currently selected backend."""
    return _BACKENDS[_active_name]


def get_backend(name: str):
    return _BACKENDS[name]


@contextmanager
def use_backend(name: str):
    """Temporarily select a backend (testing and benchmarking hook)."""
    global _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    previous = _active_name
    _active_name = name
    try:
        yield _BACKENDS[name]
    finally:
        _active_name = previous
