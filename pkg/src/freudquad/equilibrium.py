"""Equilibrium measures of polynomial external fields: support solve,
density, CDF and its inverse, node guesses, and the subsampling threshold."""

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P

from .errors import (ConvergenceError, DomainError, UnsupportedRegimeError)
from .potentials import FreudPotential

_PI = math.pi


@dataclass(frozen=True)
class EquilibriumMeasure:
    """Single-interval equilibrium measure on [a, b] with density
    sqrt((b-x)(x-a)) * sum_j beta[j] U_j(M(x)), M(x) = (2x-a-b)/(b-a)."""

    a: float
    b: float
    beta: np.ndarray
    n_param: int
    tcoef: np.ndarray = field(init=False)

    def __post_init__(self):
        a = float(self.a)
        b = float(self.b)
        if not (np.isfinite(a) and np.isfinite(b) and a < b):
            raise DomainError("support endpoints must satisfy a < b")
        beta = np.atleast_1d(np.asarray(self.beta, dtype=np.float64))
        if beta.ndim != 1 or beta.size % 2 == 0:
            raise DomainError("need Chebyshev-U coefficients beta_0..beta_{2m-2}")
        # first-kind coefficients of the density, via
        # (1 - t^2) U_j = (T_j - T_{j+2})/2 with out-of-range betas zero
        ext = np.zeros(beta.size + 2)
        ext[:beta.size] = beta
        tc = np.empty(beta.size + 2)
        for j in range(tc.size):
            tc[j] = 0.5*(ext[j] - (ext[j - 2] if j >= 2 else 0.0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "n_param", int(self.n_param))
        object.__setattr__(self, "tcoef", tc)

    @property
    def m(self):
        return (self.beta.size + 1)//2

    def map_to_unit(self, x):
        return (2.0*np.asarray(x, dtype=np.float64) - self.a - self.b) \
            / (self.b - self.a)

    def density(self, x):
        return density(self, x)

    def cdf(self, x):
        return cdf(self, x)

    def inverse_cdf(self, y):
        return inverse_cdf(self, y)


def _scaled_potential(V, n):
    """Effective field W(x) = V(x n^{1/(2m)})/n; monic with the same m,
    and equal to V itself when V is a monomial."""
    if V.is_monomial:
        return V
    s = float(n)**(1.0/(2*V.m))
    c = V.coeffs*s**np.arange(V.coeffs.size)/float(n)
    c[-1] = 1.0
    return FreudPotential(c)


def _vprime_cheb(W, a, b):
    # Chebyshev-T coefficients of W'(mid + half*t) on t in [-1, 1]
    q = P.Polynomial(W.deriv_coeffs)(P.Polynomial([0.5*(a + b),
                                                   0.5*(b - a)]))
    ct = C.poly2cheb(q.coef)
    out = np.zeros(2*W.m)
    out[:ct.size] = ct
    return out


def _residuals(W, a, b):
    ct = _vprime_cheb(W, a, b)
    beta0 = ct[1]/(_PI*(b - a))
    return ct[0], beta0*(_PI/2.0)*((b - a)/2.0)**2 - 1.0


def _even_endpoint(W):
    # one-unknown Newton for even fields, a = -b
    bb = math.sqrt(2.0)*(1.0/W.m)**(1.0/(2*W.m))
    for _ in range(100):
        _, r = _residuals(W, -bb, bb)
        if abs(r) <= 1e-14:
            break
        h = 1e-7*bb
        _, rp = _residuals(W, -(bb + h), bb + h)
        _, rm = _residuals(W, -(bb - h), bb - h)
        dr = (rp - rm)/(2.0*h)
        step = r/dr
        if not np.isfinite(step):
            raise ConvergenceError("endpoint solve stalled at b=%r" % bb,
                                   residual=abs(r))
        while bb - step <= 0.0:
            step *= 0.5
        bb -= step
    else:
        raise ConvergenceError("endpoint solve stalled at b=%r" % bb,
                               residual=abs(r))
    return -bb, bb


def _general_endpoints(W):
    b0 = math.sqrt(2.0)*(1.0/W.m)**(1.0/(2*W.m))
    a, b = -b0, b0
    r1, r2 = _residuals(W, a, b)
    for _ in range(100):
        if max(abs(r1), abs(r2)) <= 1e-14:
            return a, b
        h = 1e-7*(b - a)
        rpa = _residuals(W, a + h, b)
        rma = _residuals(W, a - h, b)
        rpb = _residuals(W, a, b + h)
        rmb = _residuals(W, a, b - h)
        j11 = (rpa[0] - rma[0])/(2*h)
        j12 = (rpb[0] - rmb[0])/(2*h)
        j21 = (rpa[1] - rma[1])/(2*h)
        j22 = (rpb[1] - rmb[1])/(2*h)
        det = j11*j22 - j12*j21
        if det == 0.0 or not np.isfinite(det):
            break
        da = (r1*j22 - r2*j12)/det
        db = (j11*r2 - j21*r1)/det
        t = 1.0
        while a - t*da >= b - t*db:
            t *= 0.5
            if t < 1e-8:
                break
        a -= t*da
        b -= t*db
        r1, r2 = _residuals(W, a, b)
        if not (np.isfinite(r1) and np.isfinite(r2)):
            break
    raise ConvergenceError(
        "support solve diverged near a=%r, b=%r" % (a, b),
        residual=float(max(abs(r1), abs(r2))))


def solve_support(V, n=1):
    """Endpoints and Chebyshev-U density coefficients of the equilibrium
    measure for the field V(x n^{1/(2m)})/n."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be a positive integer")
    W = _scaled_potential(V, n)
    if W.is_even:
        a, b = _even_endpoint(W)
    else:
        a, b = _general_endpoints(W)
    ct = _vprime_cheb(W, a, b)
    beta = ct[1:]/(_PI*(b - a))
    mu = EquilibriumMeasure(a, b, beta, n)
    xs = np.linspace(a, b, 1000)
    if float(np.min(density(mu, xs))) < -1e-13:
        raise UnsupportedRegimeError(
            "density negative on [a, b]: support is not a single interval")
    return mu


# kept for callers that predate the spec-facing name
solve_equilibrium = solve_support


def _useries(beta, t):
    # sum_j beta[j] U_j(t) by forward recurrence; degree is small
    um = np.ones_like(t)
    s = beta[0]*um
    if beta.size > 1:
        u = 2.0*t
        s = s + beta[1]*u
        for j in range(2, beta.size):
            um, u = u, 2.0*t*u - um
            s = s + beta[j]*u
    return s


def density(mu, x):
    """Equilibrium density; zero outside [a, b]."""
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa)
    inside = (xf >= mu.a) & (xf <= mu.b)
    xc = np.clip(xf, mu.a, mu.b)
    t = mu.map_to_unit(xc)
    rad = np.sqrt(np.maximum((mu.b - xc)*(xc - mu.a), 0.0))
    out = np.where(inside, rad*_useries(mu.beta, t), 0.0)
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def cdf(mu, x):
    """Integrated density F_n; 0 left of the support, 1 right of it."""
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa)
    t = np.clip(mu.map_to_unit(np.clip(xf, mu.a, mu.b)), -1.0, 1.0)
    th = np.arccos(t)
    tc = mu.tcoef
    val = tc[0]*(_PI - th)
    for j in range(1, tc.size):
        val = val - tc[j]*np.sin(j*th)/j
    val *= 0.25*(mu.b - mu.a)**2
    out = np.where(xf <= mu.a, 0.0, np.where(xf >= mu.b, 1.0, val))
    out = np.clip(out, 0.0, 1.0)
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def _ginv_vec(mu, y):
    # safeguarded vector Newton for F(x) = y, bisection fallback
    lo = np.full_like(y, mu.a)
    hi = np.full_like(y, mu.b)
    x = mu.a + y*(mu.b - mu.a)
    done = np.zeros(y.shape, dtype=bool)
    for _ in range(200):
        f = cdf(mu, x) - y
        done = done | (np.abs(f) <= 1e-13)
        if done.all():
            break
        lo = np.where(~done & (f < 0.0), np.maximum(lo, x), lo)
        hi = np.where(~done & (f > 0.0), np.minimum(hi, x), hi)
        d = density(mu, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - f/d
        ok = (d > 0.0) & (xn > lo) & (xn < hi) & np.isfinite(xn)
        x = np.where(done, x, np.where(ok, xn, 0.5*(lo + hi)))
    else:
        raise ConvergenceError("inverse CDF iteration stalled",
                               residual=float(np.max(np.abs(f))))
    return x


def inverse_cdf(mu, y):
    """G_n(y): the x in (a, b) with cdf(x) = y, for y strictly inside
    (0, 1)."""
    ya = np.asarray(y, dtype=np.float64)
    scalar = ya.ndim == 0
    yf = np.atleast_1d(ya).astype(np.float64)
    if not np.all((yf > 0.0) & (yf < 1.0)):
        raise DomainError("inverse CDF argument must lie in (0, 1)")
    x = _ginv_vec(mu, yf.ravel()).reshape(yf.shape)
    if scalar:
        return float(x[0])
    return x.reshape(ya.shape)


def initial_guesses_general(mu, n):
    """Ascending Newton seeds for the n scaled Gauss nodes, from the
    inverse CDF with the arcsin phase correction."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be a positive integer")
    k = np.arange(1, n + 1, dtype=np.float64)
    # the phase enters with a minus sign and is sampled at the half-integer
    # rank; checked against exact Hermite nodes, where this reproduces the
    # O(n^-2) accuracy of the counting asymptotic and keeps symmetric
    # supports giving exactly symmetric seeds
    yk0 = (2.0*k - 1.0)/(2.0*n)
    inner = _ginv_vec(mu, np.clip(yk0, 1e-16, 1.0 - 1e-16))
    phase = np.arcsin(np.clip(mu.map_to_unit(inner), -1.0, 1.0))
    yk = yk0 - phase/(2.0*_PI*n)
    yk = np.clip(yk, 1e-16, 1.0 - 1e-16)
    return _ginv_vec(mu, yk)


def _rn_radius(V, W, n, eps):
    # largest R with (pi 2^{3/2}/n) e^{-n W(R)} >= eps
    rhs = -math.log(eps) - math.log(n) + math.log(_PI*2.0**1.5)
    if rhs <= 0.0:
        return 0.0
    target = rhs/n
    if V.is_monomial:
        return target**(1.0/(2*V.m))
    hi = 1.0
    while float(W(hi)) < target:
        hi *= 2.0
        if hi > 1e12:
            raise ConvergenceError("threshold radius search diverged")
    lo = 0.0
    for _ in range(200):
        mid = 0.5*(lo + hi)
        if float(W(mid)) < target:
            lo = mid
        else:
            hi = mid
    return hi


def subsample_threshold(V, n, eps):
    """Index threshold tau below which generalized Gauss weights fall under
    eps, with the cut radius R_n; nodes k < tau or k > n - tau are trivial."""
    n = int(n)
    eps = float(eps)
    if not (0.0 < eps < 1.0):
        raise DomainError("eps must lie in (0, 1)")
    if n < 1:
        raise DomainError("n must be a positive integer")
    mu = solve_support(V, n)
    W = _scaled_potential(V, n)
    rn = _rn_radius(V, W, n, eps)
    tau = int(math.floor(n*cdf(mu, -rn)))
    return tau, rn
