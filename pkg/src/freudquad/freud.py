"""Generalized Gauss rules for weights e^{-V(x)}: equilibrium-measure
guesses, Newton refinement on the weighted-polynomial surrogate, and
renormalized weight assembly."""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .equilibrium import (_rn_radius, _scaled_potential, cdf,
                          initial_guesses_general, solve_support)
from .errors import ConvergenceError, DegeneracyError, DomainError
from .potentials import FreudPotential
from .recurrence import _log_norm_dd, freud_eval_scaled, stieltjes_coeffs
from .rules import QuadratureRule

_REALMIN = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class ScaledNodeSet:
    """Converged nodes in the varying-weight variable together with the
    stretch factor n^{1/(2m)} back to the physical axis."""

    tilde_nodes: np.ndarray
    scale: float
    a: float
    b: float

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.tilde_nodes, dtype=np.float64))
        if np.any(np.diff(t) <= 0.0):
            raise DomainError("scaled nodes must be strictly ascending")
        if t.size and not (t[0] > self.a and t[-1] < self.b):
            raise DomainError("scaled nodes must lie strictly inside (a, b)")
        object.__setattr__(self, "tilde_nodes", t)

    @property
    def physical(self):
        return self.tilde_nodes*self.scale

    def __len__(self):
        return self.tilde_nodes.size


def newton_general(evaluator, guess, V, n, bounds=None):
    """Newton iteration x <- x - r/dr on a weighted-polynomial evaluator,
    stopping at |update| <= 1e-14 max(1, |x|) or 20 iterations.

    The exponential factors stay in both numerator and denominator.  Scalar
    guesses give a scalar root; vector guesses are refined simultaneously.
    """
    n = int(n)
    if bounds is None:
        mu = solve_support(V, n)
        bounds = (mu.a, mu.b)
    a, b = float(bounds[0]), float(bounds[1])
    ga = np.asarray(guess, dtype=np.float64)
    scalar = ga.ndim == 0
    x = np.atleast_1d(ga).astype(np.float64).copy()
    live = np.ones(x.shape, dtype=bool)
    d = np.zeros_like(x)
    for _ in range(20):
        r, dr = evaluator(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.where(live, r/dr, 0.0)
        if not np.all(np.isfinite(d)):
            bad = int(np.argmax(~np.isfinite(d)))
            raise ConvergenceError("Newton step not finite", index=bad)
        xn = x - d
        # crude guesses at small n can overshoot the support on an early
        # sweep even though every root is interior; halve those steps
        for _ in range(60):
            esc = live & ((xn <= a) | (xn >= b))
            if not esc.any():
                break
            d = np.where(esc, 0.5*d, d)
            xn = x - d
        else:
            bad = int(np.argmax(esc))
            raise ConvergenceError("iterate escaped the support",
                                   index=bad, residual=float(xn[bad]))
        x = xn
        live = live & (np.abs(d) > 1e-14*np.maximum(1.0, np.abs(x)))
        if not live.any():
            break
    else:
        bad = int(np.argmax(np.abs(d)))
        raise ConvergenceError("Newton did not settle in 20 iterations",
                               index=bad, residual=float(np.abs(d[bad])))
    if scalar:
        return float(x[0])
    return x


def freud_rule(V, n, subsample=False):
    """Gauss rule for the weight e^{-V(x)}.

    Nodes come from equilibrium-measure guesses refined by Newton on the
    renormalized recurrence surrogate; weights use the classical
    h_{n-1}/(pi_{n-1} pi_n') form assembled from the same scale-tracked
    quantities, so no exponentially small monic amplitude ever appears.
    """
    if isinstance(V, str):
        V = FreudPotential.parse(V)
    n = int(n)
    if n < 1:
        raise DomainError("rule size must be a positive integer")
    mu = solve_support(V, n)
    s = float(n)**(1.0/(2*V.m))
    coeffs = stieltjes_coeffs(V, n)

    lo, hi = 1, n
    if subsample:
        W = _scaled_potential(V, n)
        rn = _rn_radius(V, W, n, _REALMIN)
        tau = int(math.floor(n*cdf(mu, -rn)))
        lo = max(tau, 1)
        hi = min(n - tau, n)
        if hi < lo:
            raise DegeneracyError("threshold removed every node")

    guesses = initial_guesses_general(mu, n)[lo - 1:hi]

    def ev(xt):
        r, dr = freud_eval_scaled(coeffs, V, n, xt*s)
        return r, dr*s

    xt = newton_general(ev, guesses, V, n, bounds=(mu.a, mu.b))
    nodes_scaled = ScaledNodeSet(xt, s, mu.a, mu.b)
    x = nodes_scaled.physical

    K = backend.get()
    bc = np.concatenate([[coeffs.mu0], coeffs.b[:n - 1]])
    pn, pnm1, dpn, e = K.freud_rec_core(n, bc,
                                        np.ascontiguousarray(x))
    prod = pnm1*dpn
    if not np.all(prod > 0.0):
        raise DegeneracyError("derivative product lost positivity")
    lh, ll = _log_norm_dd(coeffs, n - 1)
    w = K.exp_combine(1.0/prod, -2.0*e,
                      np.full_like(x, lh), np.full_like(x, ll))
    if np.any(w < 0.0) or not np.all(np.isfinite(w)):
        raise DegeneracyError("weight assembly failed")
    return QuadratureRule(x, w, "freud", n, trivial_skipped=lo - 1,
                          method="general", subsampled=bool(subsample))
