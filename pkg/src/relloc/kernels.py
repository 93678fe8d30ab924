"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the NumPy
versions are used. ``RELLOC_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("RELLOC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def get_backend(name=None):
    """Return the kernel module for ``name`` ("cython", "python") or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def projector_apply(kx, ky, kz, mass, psi, t=0.0):
    return _impl.projector_apply(kx, ky, kz, mass, psi, t)


def shell_sums(values, bins, nbins):
    return _impl.shell_sums(values, bins, nbins)
