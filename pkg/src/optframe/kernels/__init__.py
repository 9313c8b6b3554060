"""Kernel backend selection.

The compiled Cython kernels are used when available; set
``OPTFRAME_PURE_PYTHON=1`` to force the pure Python implementations.
"""

import os


def _ckernels_available() -> bool:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True


def load_backend(force_python: bool = False):
    """The kernel module to use: compiled if built, pure Python otherwise."""
    if not force_python:
        try:
            from . import _ckernels

            return _ckernels
        except ImportError:
            pass
    from . import pykernels

    return pykernels


_impl = load_backend(force_python=bool(os.environ.get("OPTFRAME_PURE_PYTHON")))

BACKEND = _impl.BACKEND
water_level = _impl.water_level
jacobi_eig = _impl.jacobi_eig

__all__ = ["BACKEND", "water_level", "jacobi_eig", "load_backend"]
