"""Kernel backend selection.

The hot numerical kernels exist twice: a numba-jitted build
(_kernels_nb) and a pure-numpy reference build (_kernels_np).  The
FREUDQUAD_JIT environment variable picks one:

  "1" (also "on", "numba")   force the jitted kernels;
  "0" (also "off", "numpy")  force the numpy kernels;
  unset or "auto"            numba when importable, numpy otherwise.

Resolution happens on first use and is cached for the process.
"""
import os

_active = None
_name = None


def load_kernels(name):
    """Import a kernel module by backend name ("numpy" or "numba")."""
    if name == "numpy":
        from . import _kernels_np
        return _kernels_np
    if name == "numba":
        from . import _kernels_nb
        return _kernels_nb
    raise ValueError(f"unknown backend {name!r}")


def _resolve():
    mode = os.environ.get("FREUDQUAD_JIT", "auto").strip().lower()
    if mode in ("0", "off", "false", "numpy"):
        return "numpy"
    if mode in ("1", "on", "true", "numba"):
        return "numba"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


def get():
    """The active kernel module."""
    global _active, _name
    if _active is None:
        _name = _resolve()
        _active = load_kernels(_name)
    return _active


def active_name():
    get()
    return _name


def set_backend(name):
    """Override the active backend ("numpy"/"numba"); mainly for tests
    and the benchmark harness."""
    global _active, _name
    _active = load_kernels(name)
    _name = name
