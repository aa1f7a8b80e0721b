"""Gauss-Hermite nodes and weights by asymptotics-seeded Newton iteration.

Initial guesses come from Tricomi (bulk) and Gatteschi (edge) expansions,
refined in the variable theta = arccos(x/mu) against a scaled
parabolic-cylinder evaluation, so the whole positive half runs as flat
vector arithmetic.  Node count n >= 200 is served here; below that the
dispatcher hands off to the recurrence path.
"""
from dataclasses import dataclass

import numpy as np

from . import backend
from .constants import AIRY_ZEROS
from .errors import (DomainError, IndexRangeError, DegeneracyError,
                     UnsupportedRegimeError, ConvergenceError)
from .rules import QuadratureRule

SQRT_PI = 1.7724538509055160273
_RT2 = 1.4142135623730951
REC_THRESHOLD = 200
RHO = 0.4985
_REALMIN = np.finfo(np.float64).tiny
_NEWTON_TOL = 1e-14
_NEWTON_CAP = 10


@dataclass(frozen=True)
class HermiteContext:
    """Size-derived quantities: mu = sqrt(2n+1), alpha = mod(n,2) - 1/2,
    nu = 4*floor(n/2) + 2*alpha + 2 (= 2n+1 for both parities)."""
    n: int
    mu: float
    alpha: float
    nu: float


def context(n) -> HermiteContext:
    n = int(n)
    if n < 1:
        raise DomainError("rule size must be a positive integer")
    alpha = (n % 2) - 0.5
    nu = 4.0*(n//2) + 2.0*alpha + 2.0
    return HermiteContext(n, np.sqrt(2.0*n + 1.0), alpha, nu)


# ------------------------------------------------------------- guesses

def _tau_newton(rhs):
    """Solve tau - sin(tau) = rhs elementwise, Newton from pi/2.

    The target is convex with positive slope on (0, pi], so the iteration
    is monotone from any start; elements freeze once |residual| <= 1e-14,
    which keeps every element's trajectory independent of its neighbors.
    """
    rhs = np.asarray(rhs, dtype=np.float64)
    tau = np.full_like(rhs, np.pi/2)
    for _ in range(100):
        f = tau - np.sin(tau) - rhs
        live = np.abs(f) > 1e-14
        if not live.any():
            return tau
        d = np.where(live, f/(1.0 - np.cos(tau)), 0.0)
        tau = tau - d
    raise ConvergenceError("tau iteration stalled",
                           residual=float(np.max(np.abs(f))))


def tricomi_tau(n, k):
    """tau_k of the bulk expansion; k counts positive nodes from the
    center (k = 0 exists only for odd n)."""
    ctx = context(n)
    rhs = (4.0*(ctx.n//2) - 4.0*np.asarray(k, dtype=np.float64) + 3.0) \
        * np.pi/ctx.nu
    # the odd-n center value nu*pi/nu can land an ulp above pi
    if np.any(rhs <= 0.0) or np.any(rhs > np.pi*(1.0 + 1e-12)):
        raise IndexRangeError("tau equation right-hand side outside (0, pi]")
    return _tau_newton(np.minimum(rhs, np.pi))


def tricomi_guess(n, k):
    """Bulk initial guess for the k-th positive node (x units)."""
    ctx = context(n)
    tau = tricomi_tau(n, k)
    sigma = np.cos(tau/2.0)**2
    om = 1.0 - sigma
    x2 = ctx.nu*sigma - (5.0/(4.0*om*om) - 1.0/om - 0.25)/(3.0*ctx.nu)
    if np.any(x2 < 0.0):
        raise DegeneracyError("negative radicand in bulk node expansion")
    return np.sqrt(x2)


def _airy_zeros_vec(kmax):
    a = np.empty(kmax)
    m = min(kmax, 10)
    a[:m] = AIRY_ZEROS[:m]
    if kmax > 10:
        ms = np.arange(11.0, kmax + 1.0)
        s = 3.0*np.pi*(4.0*ms - 1.0)/8.0
        s2 = 1.0/(s*s)
        tail = 162375596875.0/334430208.0
        corr = 1.0 + s2*(5.0/48.0 + s2*(-5.0/36.0 + s2*(77125.0/82944.0
                         + s2*(-108056875.0/6967296.0 + s2*tail))))
        a[10:] = -np.cbrt(s)**2*corr
    return a


def gatteschi_guess(n, k):
    """Edge initial guess for the k-th node counted from the top."""
    ctx = context(n)
    k = np.asarray(k)
    if np.any(k < 1) or np.any(k > ctx.n - int(RHO*ctx.n)):
        raise IndexRangeError("edge index outside the Gatteschi split range")
    kmax = int(np.max(k))
    ak = _airy_zeros_vec(kmax)[k - 1]
    nu = ctx.nu
    nu13 = np.cbrt(nu)
    ak2 = ak*ak
    ak3 = ak2*ak
    x2 = (nu + 2.0**(2.0/3.0)*ak*nu13
          + 0.2*2.0**(4.0/3.0)*ak2/nu13
          + (9.0/140.0 - 12.0/175.0*ak3)/nu
          + (16.0/1575.0*ak + 92.0/7875.0*ak2*ak2)*2.0**(2.0/3.0)
          / (nu*nu13*nu13)
          - (15152.0/3031875.0*ak3*ak2 + 1088.0/121275.0*ak2)*2.0**(1.0/3.0)
          / (nu*nu*nu13))
    if np.any(x2 < 0.0):
        raise DegeneracyError("negative radicand in edge node expansion")
    return np.sqrt(x2)


def _positions(n):
    """Center-out bookkeeping for the positive half.

    Returns (H, split) where H = ceil(n/2) positions j = 0..H-1 cover the
    nonnegative nodes ascending in x, and positions j > split use the edge
    expansion (j <= split use the bulk one)."""
    H = (n + 1)//2
    rho_n = int(RHO*n)
    # Tricomi index k_c = j (odd n, j=0 is the center) or j+1 (even n)
    split = rho_n if n % 2 else rho_n - 1
    return H, min(split, H - 1)


def _guess_x(n, js):
    """Initial node guesses (x units) at center-out positions js."""
    H, split = _positions(n)
    odd = n % 2
    x = np.empty(js.shape, dtype=np.float64)
    bulk = js <= split
    if bulk.any():
        kc = js[bulk] + (0 if odd else 1)
        x[bulk] = tricomi_guess(n, kc)
    if (~bulk).any():
        ktop = n//2 - (js[~bulk] + (0 if odd else 1)) + 1
        x[~bulk] = gatteschi_guess(n, ktop)
    return x


def initial_guesses_theta(n, js=None):
    """theta = arccos(x/mu) seeds at center-out positions js (default:
    the whole positive half)."""
    ctx = context(n)
    H, _ = _positions(n)
    if js is None:
        js = np.arange(H)
    x = _guess_x(n, js)
    t = x/ctx.mu
    if np.any(t >= 1.0) or np.any(t < 0.0):
        raise DegeneracyError("node guess escaped (0, mu)")
    return np.arccos(t)


# ------------------------------------------------------------- Newton

def eval_scaled_U(n, theta):
    """Scaled parabolic-cylinder pair (value, z-derivative) at
    x = mu*cos(theta); the value is bounded by 1 up to truncation error."""
    theta = np.asarray(theta, dtype=np.float64)
    if np.any(theta <= 0.0) or np.any(theta > np.pi/2):
        raise DomainError("theta must lie in (0, pi/2]")
    scalar = theta.ndim == 0
    flat = np.ascontiguousarray(theta.reshape(-1))
    Ut, dUt = backend.get().pcf_eval(float(n), flat)
    if scalar:
        return float(Ut[0]), float(dUt[0])
    return Ut, dUt


def _newton_drive(n, theta, watch):
    """Shared Newton loop: sweeps the whole vector until the largest
    watched update is below tolerance.  Returns (theta, dUt, sweeps).

    The watch mask must be identical between subsampled and full runs of
    the same n (it is built from sentinel positions present in both), so
    both stop after the same number of sweeps and shared entries come out
    bit-identical.
    """
    K = backend.get()
    mu = np.sqrt(2.0*n + 1.0)
    applied = 0
    while True:
        Ut, dUt = K.pcf_eval(float(n), theta)
        d = Ut/(_RT2*mu*dUt*np.sin(theta))
        r = float(np.max(np.abs(d[watch])))
        if r <= _NEWTON_TOL:
            return theta, dUt, applied
        if applied >= _NEWTON_CAP:
            bad = int(np.argmax(np.abs(d)))
            raise ConvergenceError(
                f"Newton sweep limit reached at position {bad}",
                index=bad, residual=r)
        theta = theta + d
        applied += 1


def newton_theta(n, theta0):
    """Refine theta seeds to roots of the scaled evaluator.

    Returns (theta*, iterations); every element receives the same number
    of sweeps (an update is counted only while some watched element still
    moves by more than 1e-14).
    """
    theta = np.atleast_1d(np.asarray(theta0, dtype=np.float64)).copy()
    watch = np.ones(theta.shape, dtype=bool)
    theta, _, sweeps = _newton_drive(int(n), theta, watch)
    if np.asarray(theta0).ndim == 0:
        return float(theta[0]), sweeps
    return theta, sweeps


def _sentinel_js(n, M, H, split):
    """Center-out positions watched by the Newton stop test in both run
    modes: a geometric ladder across the bulk beyond the computed core,
    the bulk/edge seam, and the whole edge block."""
    if M >= H:
        return np.empty(0, dtype=np.int64)
    js = [np.arange(max(split - 8, M), H, dtype=np.int64)]
    ladder = np.unique(np.geomspace(M, max(split - 8, M + 1), 32)
                       .astype(np.int64))
    js.append(ladder[ladder < max(split - 8, M)])
    out = np.unique(np.concatenate(js))
    return out[(out >= M) & (out < H)]


def subsample_count(n):
    """Per-side computed-core size M = min(ceil(12.5 sqrt(n)), ceil(n/2))."""
    return int(min(np.ceil(12.5*np.sqrt(n)), (n + 1)//2))


def hermite_rule_asy(n, subsample=False):
    """Hermite rule for n >= 200 via the theta-variable Newton iteration.

    With subsample=True only the M innermost positions per side are
    computed (all weights outside underflow realmin) and sub-realmin
    entries are dropped from the output; shared entries are bit-identical
    with the full run.
    """
    n = int(n)
    if n < REC_THRESHOLD:
        raise UnsupportedRegimeError(
            "asymptotic path serves n >= 200; use hermite_rule")
    ctx = context(n)
    H, split = _positions(n)
    M = subsample_count(n)
    odd = n % 2

    core_only = subsample and M < H
    sent = _sentinel_js(n, M, H, split)
    core = min(M, H)
    if core_only:
        js = np.concatenate([np.arange(core, dtype=np.int64), sent])
    else:
        js = np.arange(H, dtype=np.int64)
    # watched positions are identical in both run modes so the sweep
    # count, and with it every shared double, matches bit-for-bit
    watch = np.zeros(js.shape, dtype=bool)
    watch[:core] = True
    if sent.size:
        if core_only:
            watch[core:] = True
        else:
            watch[sent] = True

    theta0 = initial_guesses_theta(n, js)
    theta, dUt, sweeps = _newton_drive(n, theta0, watch)

    x = ctx.mu*np.cos(theta)
    if odd:
        x[0] = 0.0
    raw = np.exp(-x*x)/(dUt*dUt)

    rawc = raw[:core]
    s = 2.0*float(np.sum(rawc))
    if odd:
        s -= float(rawc[0])
    C = SQRT_PI/s
    w = C*rawc
    xc = x[:core]

    if subsample:
        keep = w >= _REALMIN
        xk = xc[keep]
        wk = w[keep]
        pos = xk > 0.0
        skipped = n//2 - int(np.count_nonzero(pos))
        nodes = np.concatenate([-xk[pos][::-1], xk])
        weights = np.concatenate([wk[pos][::-1], wk])
        return QuadratureRule(nodes, weights, "hermite", n,
                              trivial_skipped=skipped, method="asy",
                              subsampled=True)

    # full rule: mirror all H positions
    wfull = np.empty(H)
    wfull[:core] = w
    if H > core:
        wfull[core:] = C*raw[core:H]
    pos = slice(1, None) if odd else slice(None)
    nodes = np.concatenate([-x[:H][pos][::-1], x[:H]])
    weights = np.concatenate([wfull[pos][::-1], wfull])
    return QuadratureRule(nodes, weights, "hermite", n,
                          method="asy", subsampled=False)


def hermite_rule(n, subsample=False):
    """Gauss-Hermite rule of any size: recurrence-Newton path below 200
    nodes, asymptotic path at and above."""
    n = int(n)
    if n < 1:
        raise DomainError("rule size must be a positive integer")
    if n < REC_THRESHOLD:
        from .recurrence import hermite_rule_rec
        return hermite_rule_rec(n, subsample=subsample)
    return hermite_rule_asy(n, subsample=subsample)
