"""Airy Ai, Ai', and the negative zeros of Ai.

Everything the asymptotic node formulas consume.  Evaluation is
self-contained (Maclaurin series for |x| <= 9, Poincare asymptotics
beyond); the first ten zeros are embedded constants, later ones come
from the standard six-term expansion in s_m = 3*pi*(4m-1)/8.
"""
import numpy as np

from . import backend
from .constants import AIRY_ZEROS
from .errors import DomainError

__all__ = ["airy_ai", "airy_ai_prime", "airy_zero"]


def _eval(x, which):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Airy evaluation requires finite input")
    flat = np.ascontiguousarray(arr.reshape(-1))
    ai, aip = backend.get().airy_pair(flat)
    out = ai if which == 0 else aip
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def airy_ai(x):
    """Airy function Ai(x); accepts scalars or arrays."""
    return _eval(x, 0)


def airy_ai_prime(x):
    """Derivative Ai'(x); accepts scalars or arrays."""
    return _eval(x, 1)


def _zero_series(m):
    # six-term expansion, accurate from m = 11 on (and nearly converged
    # already at m = 10, which the seam test checks)
    s = 3.0*np.pi*(4.0*m - 1.0)/8.0
    s2 = 1.0/(s*s)
    tail = 162375596875.0/334430208.0
    corr = 1.0 + s2*(5.0/48.0 + s2*(-5.0/36.0 + s2*(77125.0/82944.0
                     + s2*(-108056875.0/6967296.0 + s2*tail))))
    return -np.cbrt(s)**2*corr


def airy_zero(m):
    """The m-th negative zero a_m of Ai (a_1 ~ -2.338), m >= 1."""
    m = int(m)
    if m < 1:
        raise DomainError("Airy zero index must be a positive integer")
    if m <= 10:
        return float(AIRY_ZEROS[m - 1])
    return float(_zero_series(m))
