"""Kernel backend selection.

The compiled extension is preferred when built; the numpy twin is always
available.  ``PINVPERTURB_BACKEND`` (``compiled`` or ``python``) forces a
choice for the whole process, and every public routine also takes an explicit
``backend`` argument.
"""

from __future__ import annotations

import os

from . import _jacobi_py

try:
    from . import _jacobi_cy
except ImportError:
    _jacobi_cy = None


def available_backends():
    """Kernel names importable in this process, preferred first."""
    names = []
    if _jacobi_cy is not None:
        names.append("compiled")
    names.append("python")
    return names


def default_backend():
    """Backend used when none is requested explicitly."""
    forced = os.environ.get("PINVPERTURB_BACKEND")
    if forced:
        return forced
    return "compiled" if _jacobi_cy is not None else "python"


def get_kernel(backend=None):
    """Resolve a backend name to its kernel module."""
    name = backend if backend is not None else default_backend()
    if name == "compiled":
        if _jacobi_cy is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _jacobi_cy
    if name == "python":
        return _jacobi_py
    raise ValueError(f"unknown backend {name!r}, expected 'compiled' or 'python'")
