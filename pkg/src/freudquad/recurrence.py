"""Three-term-recurrence machinery: scaled evaluation, recurrence-Newton
rules, Golub-Welsch, and the Stieltjes procedure for general weights."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal

from . import backend
from ._kernels_np import _dd_add, _dd_mul_d, _two_prod, _two_sum
from .errors import (ConvergenceError, DegeneracyError, DomainError,
                     IndexRangeError, ResolutionError,
                     UnsupportedRegimeError)
from .rules import QuadratureRule

SQRT_PI = 1.7724538509055160273
_REALMIN = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Monic three-term recurrence data pi_{k+1} = (x - a[k]) pi_k - beta_k
    pi_{k-1}.

    a[k] holds alpha_k (0-based); b[k-1] holds beta_k, so b = (beta_1, ...,
    beta_n), all strictly positive.  mu0 is the zeroth moment of the weight.
    """

    a: np.ndarray
    b: np.ndarray
    mu0: float

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=np.float64))
        b = np.atleast_1d(np.asarray(self.b, dtype=np.float64))
        if a.ndim != 1 or b.ndim != 1 or a.size != b.size:
            raise DomainError("recurrence vectors must match in length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise DomainError("recurrence coefficients must be finite")
        if not np.all(b > 0.0):
            raise DomainError("off-diagonal recurrence terms must be > 0")
        mu0 = float(self.mu0)
        if not (np.isfinite(mu0) and mu0 > 0.0):
            raise DomainError("zeroth moment must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mu0", mu0)

    def __len__(self):
        return self.a.size


def hermite_coeffs(n):
    """Monic Hermite recurrence data for weight e^{-x^2}: alpha = 0,
    beta_k = k/2, mu0 = sqrt(pi)."""
    n = int(n)
    if n < 1:
        raise DomainError("need at least one coefficient")
    return RecurrenceCoeffs(np.zeros(n), np.arange(1, n + 1)/2.0, SQRT_PI)


def hermite_eval_scaled(n, x):
    """Weighted orthonormal Hermite value h_n(x)e^{-x^2/2} and derivative.

    The underlying recurrence runs on unweighted orthonormal values with
    power-of-two renormalization; the Gaussian is attached at the end
    through a double-double exponent assembly, so results stay accurate far
    into the underflow region.
    """
    n = int(n)
    if n < 0:
        raise DomainError("degree must be nonnegative")
    xa = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(xa)):
        raise DomainError("evaluation points must be finite")
    scalar = xa.ndim == 0
    xf = np.ascontiguousarray(xa.ravel())
    K = backend.get()
    pn, pnm1, e = K.hermite_rec_core(n, xf)
    th, tl = _two_prod(xf, xf)
    lwh = -0.5*th
    lwl = -0.5*tl
    p = K.exp_combine(pn, e, lwh, lwl)
    if n == 0:
        dp = -xf*p
    else:
        dmant = math.sqrt(2.0*n)*pnm1 - xf*pn
        dp = K.exp_combine(dmant, e, lwh, lwl)
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(dp))):
        raise DegeneracyError("recurrence scaling failed")
    if scalar:
        return float(p[0]), float(dp[0])
    shape = xa.shape
    return p.reshape(shape), dp.reshape(shape)


def golub_welsch(coeffs, n, weight_tag="custom"):
    """Gauss rule from recurrence data via the symmetric tridiagonal
    eigenproblem; weights are mu0 times squared first eigenvector entries."""
    n = int(n)
    if n < 1:
        raise DomainError("rule size must be a positive integer")
    if len(coeffs.a) < n or len(coeffs.b) < n - 1:
        raise IndexRangeError("recurrence data does not cover size %d" % n)
    if n == 1:
        nodes = np.array([coeffs.a[0]])
        weights = np.array([coeffs.mu0])
        return QuadratureRule(nodes, weights, weight_tag, n, method="gw")
    d = coeffs.a[:n].copy()
    off = np.sqrt(coeffs.b[:n - 1])
    try:
        vals, vecs = eigh_tridiagonal(d, off)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("tridiagonal eigensolver failed: %s" % exc)
    weights = coeffs.mu0*vecs[0]**2
    return QuadratureRule(vals, weights, weight_tag, n, method="gw")


def _rec_seed_half(n):
    # ascending nonnegative seed positions; GW below 30, asymptotic guesses
    # from the theta machinery otherwise
    H = (n + 1)//2
    if n < 30:
        gw = golub_welsch(hermite_coeffs(n), n, weight_tag="hermite")
        x = gw.nodes[n//2:].copy()
    else:
        from .hermite import _guess_x
        x = _guess_x(n, np.arange(H, dtype=np.int64))
    if n % 2:
        x[0] = 0.0
    return x


def hermite_rule_rec(n, subsample=False):
    """Gauss-Hermite rule by Newton iteration on the scaled recurrence.

    Valid for any n at O(n^2) cost; the main solver hands sizes below the
    asymptotic threshold here.
    """
    n = int(n)
    if n < 1:
        raise DomainError("rule size must be a positive integer")
    K = backend.get()
    x = _rec_seed_half(n)
    rt2n = math.sqrt(2.0*n)
    live = np.ones(x.shape, dtype=bool)
    d = np.zeros_like(x)
    for _ in range(20):
        pn, pnm1, _ = K.hermite_rec_core(n, x)
        denom = rt2n*pnm1 - x*pn
        d = np.where(live, pn/denom, 0.0)
        x = x - d
        live = live & (np.abs(d) > 1e-14*np.maximum(1.0, np.abs(x)))
        if not live.any():
            break
    else:
        bad = int(np.argmax(np.abs(d)))
        raise ConvergenceError("recurrence Newton stalled",
                               index=bad, residual=float(np.abs(d[bad])))

    pn, pnm1, e = K.hermite_rec_core(n, x)
    mant = rt2n*pnm1 - x*pn
    # w = 2 e^{-x^2}/psi'(x)^2 with psi' = mant*2^e*e^{-x^2/2}: the Gaussian
    # cancels exactly, leaving a pure power-of-two rescale
    w = np.ldexp(2.0/(mant*mant), (-2.0*e).astype(np.int64))
    odd = n % 2
    s = 2.0*float(np.sum(w))
    if odd:
        s -= float(w[0])
    w *= SQRT_PI/s

    if subsample:
        keep = w >= _REALMIN
        xk = x[keep]
        wk = w[keep]
        pos = xk > 0.0
        skipped = n//2 - int(np.count_nonzero(pos))
        nodes = np.concatenate([-xk[pos][::-1], xk])
        weights = np.concatenate([wk[pos][::-1], wk])
        return QuadratureRule(nodes, weights, "hermite", n,
                              trivial_skipped=skipped, method="rec",
                              subsampled=True)
    posl = slice(1, None) if odd else slice(None)
    nodes = np.concatenate([-x[posl][::-1], x])
    weights = np.concatenate([w[posl][::-1], w])
    return QuadratureRule(nodes, weights, "hermite", n, method="rec")


def _support_radius(V, n):
    # the grid must clear the soft edge of the weighted-polynomial support,
    # or the lost mass is invisible to grid doubling; beyond the edge the
    # degree-n carrier squared decays like e^{-h} with h(x) = V(x) - 2n U(x),
    # U the log-potential of the equilibrium measure
    from .equilibrium import density, solve_support
    mu = solve_support(V, n)
    s = float(n)**(1.0/(2*V.m))
    T = 1024
    phi = (np.arange(T) + 0.5)*(math.pi/T)
    half = 0.5*(mu.b - mu.a)
    t = 0.5*(mu.a + mu.b) + half*np.cos(phi)
    w = density(mu, t)*half*np.sin(phi)*(math.pi/T)
    w /= np.sum(w)
    tp = t*s

    def h(x):
        return float(V(x)) - 2.0*n*float(np.sum(w*np.log(np.abs(x - tp))))

    edge = mu.b*s
    target = h(edge) + 1800.0
    step = max(0.05*edge, 1e-2)
    R = edge + step
    while h(R) < target:
        step *= 2.0
        R = edge + step
        if R > 1e15:
            raise DegeneracyError("potential growth too slow")
    lo = edge
    for _ in range(60):
        mid = 0.5*(lo + R)
        if h(mid) < target:
            lo = mid
        else:
            R = mid
    return R


def _stieltjes_pass(V, n, total_pts, R=None):
    # the carriers ride as mantissa/exponent pairs inside the kernel, so
    # e^{-V/2} may underflow the double range at grid points the
    # high-degree carriers grow back into
    if R is None:
        R = _support_radius(V, n)
    panels = int(np.ceil(total_pts/64.0))
    xg, wg = leggauss(64)
    edges = np.linspace(-R, R, panels + 1)
    half = 0.5*(edges[1] - edges[0])
    mid = 0.5*(edges[1:] + edges[:-1])
    x = np.ascontiguousarray((mid[:, None] + half*xg[None, :]).ravel())
    g = np.ascontiguousarray(np.tile(half*wg, panels))
    lw = np.ascontiguousarray(-0.5*V(x))
    a, b, mu0 = backend.get().stieltjes_core(n, x, g, lw)
    if not mu0 > 0.0:
        raise DegeneracyError("weight mass vanished on the grid")
    pos = b > 0.0
    if not pos.all():
        raise DegeneracyError("discrete measure exhausted at step %d"
                              % int(np.argmin(pos)))
    if V.is_even:
        # every a_k vanishes by parity on this symmetric grid; what the
        # kernel accumulates there is cancellation noise, which at depth
        # ~1e4 would sit above the certificate tolerance forever
        a = np.zeros_like(a)
    return RecurrenceCoeffs(a, b, mu0)


def stieltjes_coeffs(V, n, rtol=1e-12):
    """Recurrence coefficients of the monic polynomials orthogonal for
    e^{-V} via the Stieltjes procedure on a composite Gauss-Legendre grid.

    The grid is doubled until consecutive coefficient sets agree to rtol;
    failure to certify after three doublings raises ResolutionError.
    """
    n = int(n)
    if n < 1:
        raise DomainError("need at least one coefficient")
    R = _support_radius(V, n)
    pts = max(4*n, 400)
    prev = _stieltjes_pass(V, n, pts, R)
    for _ in range(3):
        pts *= 2
        cur = _stieltjes_pass(V, n, pts, R)
        sc = max(1.0, math.sqrt(float(np.max(cur.b))))
        drift = max(
            float(np.max(np.abs(cur.b - prev.b)/cur.b)),
            float(np.max(np.abs(cur.a - prev.a)))/sc,
            abs(cur.mu0 - prev.mu0)/cur.mu0,
        )
        if drift <= rtol:
            return cur
        prev = cur
    raise ResolutionError(
        "coefficients did not settle under grid doubling (drift %.3e)"
        % drift)


def _log_norm_dd(coeffs, n):
    # log(mu0 * prod beta_k, k<=n) accumulated in dd; the individual log
    # roundings dominate and stay harmless at the sizes that matter
    terms = [math.log(coeffs.mu0)]
    if n > 0:
        terms.extend(np.log(coeffs.b[:n]).tolist())
    sh, sl = 0.0, 0.0
    for t in terms:
        th, te = _two_sum(sh, float(t))
        sh = th
        sl += te
    return sh, sl


def freud_eval_scaled(coeffs, V, n, x):
    """O(1)-magnitude surrogate of pi_n(x)e^{-V(x)/2}/sqrt(h_n) and its
    derivative, via the scale-tracked monic recurrence."""
    n = int(n)
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if len(coeffs.b) < n:
        raise IndexRangeError("recurrence data does not cover degree %d" % n)
    if n > 0 and float(np.max(np.abs(coeffs.a[:n]))) > 1e-10:
        raise UnsupportedRegimeError(
            "only even weights (vanishing recurrence shifts) are supported")
    xa = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(xa)):
        raise DomainError("evaluation points must be finite")
    scalar = xa.ndim == 0
    xf = np.ascontiguousarray(xa.ravel())
    K = backend.get()
    bc = np.concatenate([[coeffs.mu0], coeffs.b[:max(n - 1, 0)]])
    pn, pnm1, dpn, e = K.freud_rec_core(n, bc, xf)

    lh, ll = _log_norm_dd(coeffs, n)
    vh, vl = K.polyval_dd(np.ascontiguousarray(V.coeffs[::-1]), xf)
    ah, al = _dd_mul_d(vh, vl, -0.5)
    lwh, lwl = _dd_add(ah, al, np.full_like(xf, -0.5*lh),
                       np.full_like(xf, -0.5*ll))
    r = K.exp_combine(pn, e, lwh, lwl)
    dmant = dpn - 0.5*V.deriv(xf)*pn
    dr = K.exp_combine(dmant, e, lwh, lwl)
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(dr))):
        raise DegeneracyError("recurrence scaling failed")
    if scalar:
        return float(r[0]), float(dr[0])
    shape = xa.shape
    return r.reshape(shape), dr.reshape(shape)
