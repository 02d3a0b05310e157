"""Kernel selection.

The compiled :mod:`chaoslab._core` is used when it imports; otherwise the
pure-Python :mod:`chaoslab._pycore`.  Setting ``CHAOSLAB_BACKEND=python``
forces the fallback.
"""
import os

from . import _pycore

kernels = _pycore

if os.environ.get("CHAOSLAB_BACKEND", "").lower() != "python":
    try:
        from . import _core as kernels  # noqa: F811
    except ImportError:
        kernels = _pycore

BACKEND = kernels.BACKEND


def get_kernels(name=None):
    """Return the kernel module called ``name`` ("cython" or "python"), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pycore
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
