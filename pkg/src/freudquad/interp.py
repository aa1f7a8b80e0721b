"""Second-form barycentric interpolation at Gauss nodes with exponential
damping, plus the stability diagnostics that justify it."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._kernels_np import exp_combine, polyval_dd
from .errors import DegeneracyError, DomainError
from .potentials import FreudPotential
from .rules import QuadratureRule

_HIT = 1e-300
_BLOCK = 2_000_000


def bary_weights(dvals, c=None):
    """Barycentric weights lambda_k = c/d_k from per-node derivative values.

    If c is not given it is chosen so max |lambda| = 1.  A QuadratureRule
    with the Hermite tag may be passed instead of raw derivative values.
    """
    if isinstance(dvals, QuadratureRule):
        if dvals.weight_tag != "hermite":
            raise DomainError(
                "derivative values required for non-Hermite rules; "
                "use BarycentricInterpolant.from_rule")
        if dvals.subsampled:
            raise DomainError("barycentric weights need the full node set")
        from .recurrence import hermite_eval_scaled
        _, dpsi = hermite_eval_scaled(dvals.total_n, dvals.nodes)
        lam, _, _ = _damped_weights(dvals.nodes, dpsi,
                                    FreudPotential.monomial(1))
        return lam if c is None else c*lam
    d = np.asarray(dvals, dtype=np.float64)
    if np.any(d == 0.0) or not np.all(np.isfinite(d)):
        raise DegeneracyError("zero or non-finite derivative at a node")
    lam = 1.0/d
    if c is None:
        c = 1.0/float(np.max(np.abs(lam)))
    return c*lam


def _damped_weights(nodes, dvals, V):
    # lambda ~ e^{-V/2}/dvals and its undamped companion lambda e^{+V/2},
    # assembled without forming the exponentials twice
    if np.any(dvals == 0.0) or not np.all(np.isfinite(dvals)):
        raise DegeneracyError("zero or non-finite derivative at a node")
    raw = 1.0/dvals
    vh, vl = polyval_dd(np.ascontiguousarray(V.coeffs[::-1]), nodes)
    lam = exp_combine(raw, np.zeros_like(nodes), -0.5*vh, -0.5*vl)
    norm = float(np.max(np.abs(lam)))
    if not norm > 0.0:
        raise DegeneracyError("all barycentric weights underflowed")
    return lam/norm, raw/norm, 1.0/norm


@dataclass(frozen=True)
class BarycentricInterpolant:
    """Second-form barycentric interpolant at ascending nodes, with the
    damped weights normalized to max |lambda| = 1.

    lamw carries lambda_k e^{V(x_k)/2}; it feeds the weighted Lebesgue
    diagnostics without re-forming large exponentials.
    """

    nodes: np.ndarray
    lam: np.ndarray
    c: float
    V: FreudPotential
    samples: np.ndarray
    lamw: Optional[np.ndarray] = None
    log_scale: Optional[float] = None

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=np.float64))
        lam = np.atleast_1d(np.asarray(self.lam, dtype=np.float64))
        samples = np.atleast_1d(np.asarray(self.samples, dtype=np.float64))
        if not (nodes.size == lam.size == samples.size):
            raise DomainError("nodes, weights, and samples must align")
        if np.any(np.diff(nodes) <= 0.0):
            raise DomainError("nodes must be strictly ascending")
        norm = float(np.max(np.abs(lam)))
        if not (np.isfinite(norm) and norm > 0.0):
            raise DegeneracyError("degenerate barycentric weights")
        c = float(self.c)/norm if self.c else 1.0/norm
        lamw = self.lamw
        if lamw is None:
            with np.errstate(over="ignore"):
                lamw = lam*np.exp(0.5*V_eval(self.V, nodes))
        lamw = np.atleast_1d(np.asarray(lamw, dtype=np.float64))/norm
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "lam", lam/norm)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "lamw", lamw)

    @classmethod
    def from_rule(cls, rule, f, V=None, coeffs=None):
        """Interpolant on a full rule's nodes; f is a callable or an array
        of samples."""
        if rule.subsampled:
            raise DomainError("interpolation needs the full node set")
        nodes = rule.nodes
        n = rule.total_n
        if rule.weight_tag == "hermite":
            if V is None:
                V = FreudPotential.monomial(1)
            from .recurrence import (_log_norm_dd, hermite_coeffs,
                                     hermite_eval_scaled)
            _, dv = hermite_eval_scaled(n, nodes)
            if coeffs is None:
                coeffs = hermite_coeffs(n)
        else:
            if V is None:
                raise DomainError("potential required for this rule")
            from .recurrence import (_log_norm_dd, freud_eval_scaled,
                                     stieltjes_coeffs)
            if coeffs is None:
                coeffs = stieltjes_coeffs(V, n)
            _, dv = freud_eval_scaled(coeffs, V, n, nodes)
        lam, lamw, c = _damped_weights(nodes, dv, V)
        samples = np.asarray(f(nodes) if callable(f) else f,
                             dtype=np.float64)
        lh, _ = _log_norm_dd(coeffs, n)
        return cls(nodes, lam, c, V, samples, lamw=lamw,
                   log_scale=0.5*lh)

    def __len__(self):
        return self.nodes.size

    def eval(self, x):
        return bary_eval(self, x)

    def eval_weighted(self, x):
        return eval_weighted(self, x)

    def __call__(self, x):
        return bary_eval(self, x)


def V_eval(V, x):
    return np.polynomial.polynomial.polyval(
        np.asarray(x, dtype=np.float64), V.coeffs)


def _ratio_parts(interp, xf, want_abs=False, use_lamw=False):
    # returns numerator-style sums, hit bookkeeping, and the absolute-value
    # companion of the denominator (its rounding-noise scale), blockwise
    nodes = interp.nodes
    lam = interp.lamw if use_lamw else interp.lam
    n = nodes.size
    num = np.empty_like(xf)
    den = np.empty_like(xf)
    dabs = np.empty_like(xf)
    hitrow = np.zeros(xf.shape, dtype=bool)
    hitcol = np.zeros(xf.shape, dtype=np.int64)
    block = max(1, _BLOCK//max(n, 1))
    for i0 in range(0, xf.size, block):
        xs = xf[i0:i0 + block, None]
        d = xs - nodes[None, :]
        hit = np.abs(d) < _HIT
        anyhit = hit.any(axis=1)
        d = np.where(hit, 1.0, d)
        r = lam/d
        if want_abs:
            num[i0:i0 + block] = np.abs(r).sum(axis=1)
        else:
            num[i0:i0 + block] = (r*interp.samples).sum(axis=1)
        dr = interp.lam/d
        den[i0:i0 + block] = dr.sum(axis=1)
        dabs[i0:i0 + block] = np.abs(dr).sum(axis=1)
        hitrow[i0:i0 + block] = anyhit
        hitcol[i0:i0 + block] = np.argmax(hit, axis=1)
    return num, den, dabs, hitrow, hitcol


def _log_abs_den(interp, xf):
    # |sum lam_j/(x - x_j)| equals C/|prod (x - x_j)| with C tied to the
    # stored normalization; in log space this stays meaningful where the
    # floating second-form sum is pure cancellation noise
    logw = np.log(np.abs(xf[:, None] - interp.nodes[None, :])).sum(axis=1)
    return interp.log_scale + np.log(interp.c) - logw


def bary_eval(interp, x):
    """Second-form ratio evaluation; exact sample values on node hits."""
    xa = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(xa)):
        raise DomainError("evaluation points must be finite")
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa).ravel().astype(np.float64)
    num, den, _, hitrow, hitcol = _ratio_parts(interp, xf)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num/den
    out = np.where(hitrow, interp.samples[hitcol], out)
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def eval_weighted(interp, x):
    """Damped interpolant L_n[f](x) e^{-V(x)/2}; bounded on all of R."""
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa).ravel().astype(np.float64)
    vals = np.atleast_1d(bary_eval(interp, xf))
    with np.errstate(under="ignore"):
        damp = np.exp(-0.5*V_eval(interp.V, xf))
    out = vals*damp
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)


def default_lebesgue_grid(nodes):
    """Nodes, 11 interior points per gap, and a 10 percent extension past
    each extreme node."""
    parts = [nodes]
    for i in range(nodes.size - 1):
        parts.append(np.linspace(nodes[i], nodes[i + 1], 13)[1:-1])
    span = nodes[-1] - nodes[0]
    parts.append(np.linspace(nodes[0] - 0.1*span, nodes[0], 21)[:-1])
    parts.append(np.linspace(nodes[-1], nodes[-1] + 0.1*span, 21)[1:])
    return np.sort(np.concatenate(parts))


def lebesgue_weighted(interp, grid=None):
    """Weighted Lebesgue function over the grid and its maximum."""
    if grid is None:
        grid = default_lebesgue_grid(interp.nodes)
    xf = np.asarray(grid, dtype=np.float64).ravel()
    s, den, dabs, hitrow, _ = _ratio_parts(interp, xf, want_abs=True,
                                           use_lamw=True)
    with np.errstate(under="ignore", invalid="ignore", divide="ignore"):
        damp = np.exp(-0.5*V_eval(interp.V, xf))
        vals = damp*s/np.abs(den)
    bad = ~hitrow & (np.abs(den) < 1e-10*dabs)
    if bad.any() and interp.log_scale is not None:
        # far outside the nodes the second-form denominator is rounding
        # noise; rebuild the value fully in log space so the damping
        # underflow cannot zero it either
        xb = xf[bad]
        logv = (np.log(s[bad]) - 0.5*V_eval(interp.V, xb)
                - _log_abs_den(interp, xb))
        with np.errstate(over="ignore", under="ignore"):
            vals[bad] = np.exp(logv)
    vals = np.where(hitrow, 1.0, vals)
    return vals, float(np.max(vals))


def cond_unity(interp, x):
    """Sum of absolute cardinal functions at x (condition number of
    interpolating the constant 1)."""
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa).ravel().astype(np.float64)
    s, den, dabs, hitrow, _ = _ratio_parts(interp, xf, want_abs=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = s/np.abs(den)
    bad = ~hitrow & (np.abs(den) < 1e-10*dabs)
    if bad.any() and interp.log_scale is not None:
        with np.errstate(over="ignore", under="ignore"):
            out[bad] = np.exp(np.log(s[bad]) - _log_abs_den(interp, xf[bad]))
    out = np.where(hitrow, 1.0, out)
    if scalar:
        return float(out[0])
    return out.reshape(xa.shape)
