"""Polynomial external fields V(x) = x^{2m} + lower-order terms."""

import re
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError

_MONO_RE = re.compile(r"^x\s*(?:\^|\*\*)\s*(\d+)$")


@dataclass(frozen=True)
class FreudPotential:
    """Monic polynomial potential of even degree 2m with V(0) = V'(0) = 0.

    coeffs holds monomial coefficients, constant term first, so
    V(x) = sum coeffs[i] * x**i with coeffs[-1] == 1.
    """

    coeffs: np.ndarray
    m: int = field(init=False)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.float64))
        if c.ndim != 1 or c.size < 3:
            raise DomainError("potential needs degree >= 2")
        if not np.all(np.isfinite(c)):
            raise DomainError("potential coefficients must be finite")
        deg = c.size - 1
        if deg % 2:
            raise DomainError("potential degree must be even")
        if c[-1] != 1.0:
            raise DomainError("potential must be monic")
        if c[0] != 0.0 or c[1] != 0.0:
            raise DomainError("potential must satisfy V(0) = V'(0) = 0")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "m", deg // 2)

    @classmethod
    def monomial(cls, m):
        m = int(m)
        if m < 1:
            raise DomainError("half-degree must be >= 1")
        c = np.zeros(2*m + 1)
        c[-1] = 1.0
        return cls(c)

    @classmethod
    def parse(cls, text):
        """Build a potential from 'x^k' / 'x**k' or a comma-separated
        coefficient list, constant term first."""
        s = text.strip().lower()
        mo = _MONO_RE.match(s)
        if mo:
            k = int(mo.group(1))
            if k < 2 or k % 2:
                raise DomainError(
                    "monomial potential must have even degree >= 2")
            return cls.monomial(k // 2)
        if "," in s:
            try:
                vals = [float(t) for t in s.split(",")]
            except ValueError:
                raise DomainError("bad coefficient list: %r" % text) from None
            return cls(np.asarray(vals))
        raise DomainError("cannot parse potential %r" % text)

    @property
    def degree(self):
        return 2*self.m

    @property
    def is_even(self):
        return bool(np.all(self.coeffs[1::2] == 0.0))

    @property
    def is_monomial(self):
        return bool(np.all(self.coeffs[:-1] == 0.0))

    @property
    def deriv_coeffs(self):
        """Coefficients of V', constant term first."""
        return P.polyder(self.coeffs)

    def __call__(self, x):
        return P.polyval(x, self.coeffs)

    def deriv(self, x):
        return P.polyval(x, self.deriv_coeffs)

    @property
    def label(self):
        if self.is_monomial:
            return "x^%d" % self.degree
        return ",".join(repr(float(c)) for c in self.coeffs)

    def __repr__(self):
        return "FreudPotential(%s)" % self.label
