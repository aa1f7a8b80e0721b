import math

import numpy as np
import pytest

from freudquad.errors import (ConvergenceError, DomainError,
                              IndexRangeError, UnsupportedRegimeError)
from freudquad.hermite import (RHO, context, eval_scaled_U, gatteschi_guess,
                               hermite_rule, hermite_rule_asy,
                               initial_guesses_theta, newton_theta,
                               subsample_count, tricomi_guess, tricomi_tau)
from freudquad.hermite import _tau_newton
from freudquad.recurrence import hermite_eval_scaled

from oracles import (gauss_hermite_moment, hermite_oracle_cached,
                     scaled_u_reference)

SQRT_PI = math.sqrt(math.pi)
REALMIN = np.finfo(np.float64).tiny


# ------------------------------------------------------------- context

def test_context_identities():
    for n in [1, 2, 7, 200, 1001]:
        ctx = context(n)
        assert ctx.mu == math.sqrt(2*n + 1)
        assert ctx.alpha == (n % 2) - 0.5
        # nu = 4 floor(n/2) + 2 alpha + 2 collapses to 2n+1 for both parities
        assert ctx.nu == 2*n + 1


# ------------------------------------------------------------- guesses

def test_tau_equation_fixed_points():
    assert abs(_tau_newton(np.array([np.pi]))[0] - np.pi) < 1e-14
    assert abs(_tau_newton(np.array([np.pi/2 - 1]))[0] - np.pi/2) < 1e-14
    # bisection-verified root of tau - sin tau = 1
    assert abs(_tau_newton(np.array([1.0]))[0]
               - 1.9345632107520243) < 1e-14


def test_tau_residuals_across_range():
    n = 1000
    ctx = context(n)
    k = np.arange(1, int(RHO*n) + 1)
    tau = tricomi_tau(n, k)
    rhs = (4.0*(n//2) - 4.0*k + 3.0)*np.pi/ctx.nu
    assert np.max(np.abs(tau - np.sin(tau) - rhs)) <= 1e-14


def test_tau_rejects_out_of_range():
    with pytest.raises(IndexRangeError):
        tricomi_tau(1000, 0)       # rhs > pi for k=0 at even n
    with pytest.raises(IndexRangeError):
        tricomi_tau(1000, 10**6)


def test_tricomi_guess_near_center_n200():
    x, _ = hermite_oracle_cached(200)
    # k=1: first positive node; full-rule ascending index 100
    assert abs(float(tricomi_guess(200, 1)) - x[100]) <= 1e-3


def test_tricomi_guess_bulk_accuracy_n1000():
    x, _ = hermite_oracle_cached(1000)
    k = np.arange(1, int(RHO*1000) + 1)
    guesses = tricomi_guess(1000, k)
    truth = x[499 + k]
    assert np.max(np.abs(guesses - truth)) <= 1e-4


def test_gatteschi_guess_edge():
    x200, _ = hermite_oracle_cached(200)
    assert abs(float(gatteschi_guess(200, 2)) - x200[-2]) <= 1e-5
    x1000, _ = hermite_oracle_cached(1000)
    assert abs(float(gatteschi_guess(1000, 1)) - x1000[-1]) <= 1e-6


def test_gatteschi_below_mu():
    # the expansion is an edge formula; deep into the bulk its radicand
    # degenerates, so only exercise the outer half of the admissible range
    for n in [200, 1000]:
        ctx = context(n)
        kmax = (n - int(RHO*n))//2
        g = gatteschi_guess(n, np.arange(1, kmax + 1))
        assert np.all(g < ctx.mu)


def test_gatteschi_rejects_out_of_range():
    with pytest.raises(IndexRangeError):
        gatteschi_guess(1000, 0)
    with pytest.raises(IndexRangeError):
        gatteschi_guess(1000, 1000)


def test_theta_guesses_domain_and_split():
    n = 1000
    ctx = context(n)
    theta = initial_guesses_theta(n)
    assert theta.shape == (500,)
    assert np.all(theta > 0.0) and np.all(theta <= np.pi/2)
    x = ctx.mu*np.cos(theta)
    # bulk block ends after floor(0.4985 n) = 498 positions (j = 0..497)
    assert x[497] == float(tricomi_guess(n, 498))
    assert x[497] != float(gatteschi_guess(n, 3))
    assert x[498] == float(gatteschi_guess(n, 2))
    assert x[499] == float(gatteschi_guess(n, 1))


# ------------------------------------------------------------- evaluator

def test_eval_scaled_domain_errors():
    with pytest.raises(DomainError):
        eval_scaled_U(500, 0.0)
    with pytest.raises(DomainError):
        eval_scaled_U(500, np.pi/2 + 1e-9)
    with pytest.raises(DomainError):
        eval_scaled_U(500, -0.3)


def test_eval_scaled_bounded_by_one():
    for n in [200, 1000]:
        theta = np.linspace(1e-12, np.pi/2, 4000)
        Ut, _ = eval_scaled_U(n, theta)
        assert np.max(np.abs(Ut)) <= 1.0 + 1e-10


def test_eval_scaled_single_point_n200():
    n = 200
    mu = math.sqrt(2*n + 1.0)
    grid = np.linspace(0.3, np.pi/2, 1500)
    Ut, ref = scaled_u_reference(n, grid)
    th5 = math.acos(5.0/mu)
    i = int(np.argmin(np.abs(grid - th5)))
    u5, _ = eval_scaled_U(n, np.array([th5]))
    h5, _ = hermite_eval_scaled(n, np.array([5.0]))
    c = ref[i]/hermite_eval_scaled(n, mu*np.cos(grid[i:i + 1]))[0][0]
    assert abs(u5[0] - c*h5[0]) <= 1e-12


def test_eval_scaled_small_theta_regression():
    # the turning-point series branch: the closed trig forms cancel
    # catastrophically below theta ~ 0.01 and once produced garbage there
    n = 80
    mu = math.sqrt(2*n + 1.0)
    grid = np.linspace(0.3, np.pi/2, 800)
    Ut, _ = eval_scaled_U(n, grid)
    h, _ = hermite_eval_scaled(n, mu*np.cos(grid))
    m = np.abs(h) > 0.3*np.abs(h).max()
    c = float(np.median(Ut[m]/h[m]))
    small = np.array([1e-300, 1e-12, 1e-6, 1e-3, 5e-3, 2e-2, 9e-2, 0.11])
    Us, _ = eval_scaled_U(n, small)
    hs, _ = hermite_eval_scaled(n, mu*np.cos(small))
    assert np.max(np.abs(Us - c*hs)) <= 1e-9
    assert np.all(np.isfinite(Us))


# ------------------------------------------------------------- newton

def test_newton_theta_converges_and_counts():
    for n, cap in [(1000, 3), (6000, 1)]:
        theta0 = initial_guesses_theta(n)
        theta, sweeps = newton_theta(n, theta0)
        assert sweeps <= cap
        Ut, dUt = eval_scaled_U(n, theta[theta > 0])
        # residual in update units is below the 1e-14 stop tolerance;
        # in value units it is scaled up by sqrt(2) mu |U' sin theta|
        mu = math.sqrt(2.0*n + 1.0)
        step = Ut/(math.sqrt(2.0)*mu*dUt*np.sin(theta[theta > 0]))
        assert np.max(np.abs(step)) <= 1e-14
        assert np.max(np.abs(Ut)) <= 1e-11


def test_newton_theta_nonconvergence_raises():
    # a seed far from any root cannot settle within the sweep cap
    with pytest.raises(ConvergenceError):
        newton_theta(200, np.array([1e-9]))


# ------------------------------------------------------------- rules

def test_rule_asy_rejects_small_n():
    with pytest.raises(UnsupportedRegimeError):
        hermite_rule_asy(150)


def test_rule_dispatcher_rejects_nonpositive():
    with pytest.raises(DomainError):
        hermite_rule(0)
    with pytest.raises(DomainError):
        hermite_rule(-5)


def test_tiny_rules_closed_forms():
    r1 = hermite_rule(1)
    assert np.allclose(r1.nodes, [0.0], atol=1e-300)
    assert abs(r1.weights[0] - SQRT_PI) < 1e-15

    r2 = hermite_rule(2)
    assert np.max(np.abs(r2.nodes - np.array([-1, 1])/math.sqrt(2))) < 1e-15
    assert np.max(np.abs(r2.weights - SQRT_PI/2)) < 1e-15

    r3 = hermite_rule(3)
    want = np.array([-math.sqrt(1.5), 0.0, math.sqrt(1.5)])
    assert np.max(np.abs(r3.nodes - want)) < 1e-14


def test_weight_sum_and_symmetry():
    for n in [200, 467, 1000]:
        r = hermite_rule_asy(n)
        assert abs(r.weights.sum() - SQRT_PI) <= 1e-14*SQRT_PI
        # far-tail weights underflow to exact zero once e^{-x^2} leaves
        # the double range; everything representable must be positive
        assert np.all(r.weights >= 0.0)
        assert np.all(r.weights[np.abs(r.nodes) < 26.0] > 0.0)
        assert np.max(np.abs(r.nodes + r.nodes[::-1])) == 0.0
        assert np.array_equal(r.weights, r.weights[::-1])
        if n % 2:
            assert r.nodes[n//2] == 0.0


def test_node_bound():
    for n in [200, 500, 1000]:
        r = hermite_rule_asy(n)
        assert np.max(np.abs(r.nodes)) < math.sqrt(2.0*n + 1.0)


def test_exactness_small_n():
    for n in [6, 13, 20]:
        r = hermite_rule(n)
        for j in range(0, 2*n, 2):
            got = r.integrate(r.nodes**j)
            want = gauss_hermite_moment(j)
            assert abs(got - want) <= 1e-12*want
        for j in range(1, 2*n, 2):
            # cancellation floor scales with the |x|^j moment
            scale = max(1.0, gauss_hermite_moment(j + 1))
            assert abs(r.integrate(r.nodes**j)) <= 1e-13*scale


def test_oracle_agreement_n200():
    x, w = hermite_oracle_cached(200)
    r = hermite_rule_asy(200)
    assert np.max(np.abs(r.nodes - x)) <= 1e-12
    sel = w >= 1e-280
    rel = np.abs(r.weights[sel] - w[sel])/w[sel]
    assert np.max(rel) <= 1e-10


def test_interlacing():
    for n in [10, 25, 49]:
        a = hermite_rule(n).nodes
        b = hermite_rule(n + 1).nodes
        # every gap of the (n+1)-rule contains exactly one n-rule node
        idx = np.searchsorted(b, a)
        assert np.all(np.diff(idx) >= 1)
        assert np.all((a > b[:-1][idx - 1]) & (a < b[idx]))


def test_underflow_tail():
    r = hermite_rule_asy(10000)
    sel = np.abs(r.nodes) > 27.0
    assert sel.any()
    assert np.all(r.weights[sel] < REALMIN)


def test_subsample_count_formula():
    for n in [1000, 10**4, 10**6]:
        assert subsample_count(n) == min(math.ceil(12.5*math.sqrt(n)),
                                         (n + 1)//2)
    assert subsample_count(100) == 50


def test_subsampled_rule_n1000():
    full = hermite_rule_asy(1000)
    sub = hermite_rule_asy(1000, subsample=True)
    per_side = len(sub)//2
    assert abs(per_side - 361) <= 40
    assert abs(sub.weights.sum() - SQRT_PI) <= 1000*REALMIN + 1e-14
    # shared indices bit-identical with the full run
    idx = sub.global_indices() - 1
    assert np.array_equal(full.nodes[idx], sub.nodes)
    assert np.array_equal(full.weights[idx], sub.weights)
    assert sub.trivial_skipped == idx[0]


def test_dispatcher_seam_consistency():
    # REC at 199 and ASY at 200 are different algorithms; each must agree
    # with its own oracle, and the 200-rule agrees with REC-at-200
    from freudquad.recurrence import hermite_rule_rec
    asy = hermite_rule(200)
    rec = hermite_rule_rec(200)
    assert asy.method == "asy"
    assert np.max(np.abs(asy.nodes - rec.nodes)) <= 1e-12
