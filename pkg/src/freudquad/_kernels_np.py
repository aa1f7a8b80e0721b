"""Pure-numpy compute kernels (reference backend).

The numba twin in _kernels_nb mirrors every public function here with the
same name, signature, and term ordering.  All functions are elementwise
over 1-D float64 arrays.  Series use fixed iteration counts instead of
adaptive breaks so an input value computes to the same bits no matter
which array it arrives in; subsampled runs are compared bit-for-bit
against full runs and rely on that.

Double-double (hi, lo) arithmetic appears only where a plain double loses
too much: the Airy Maclaurin series, the oscillatory phase reduction, and
exponent assembly for scale-tracked recurrences.
"""
import math

import numpy as np

from .constants import (AI0, AIP0, TWOPI, PIO4, LN2, UKR, VKR,
                        ETA_COEFFS, PCF_SMALL_THETA, A1_SMALL, B0_SMALL,
                        B1_SMALL, C0_SMALL, D1_SMALL, C1_SMALL)

_SQRT_PI = 1.7724538509055160273
_PI_M14 = 0.7511255444649425    # pi^(-1/4)
_RT2 = 1.4142135623730951


# ---------------------------------------------------------------- dd ops

def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _two_prod(a, b):
    p = a*b
    ca = 134217729.0*a
    ah = ca - (ca - a)
    al = a - ah
    cb = 134217729.0*b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah*bh - p) + ah*bl + al*bh) + al*bl


def _dd_add(ah, al, bh, bl):
    sh, se = _two_sum(ah, bh)
    se = se + (al + bl)
    return _two_sum(sh, se)


def _dd_mul(ah, al, bh, bl):
    ph, pe = _two_prod(ah, bh)
    pe = pe + (ah*bl + al*bh)
    return _two_sum(ph, pe)


def _dd_mul_d(ah, al, b):
    ph, pe = _two_prod(ah, b)
    pe = pe + al*b
    return _two_sum(ph, pe)


def _dd_div_d(ah, al, d):
    # d must be an exact double (here: small integers)
    q1 = ah/d
    th, tl = _two_prod(q1, d)
    rh, rl = _dd_add(ah, al, -th, -tl)
    return _two_sum(q1, (rh + rl)/d)


# ---------------------------------------------------------------- Airy

def _airy_maclaurin(x):
    """Ai, Ai' for |x| <= 9 from the two Maclaurin series in dd."""
    x2h, x2l = _two_prod(x, x)
    x3h, x3l = _dd_mul_d(x2h, x2l, x)

    # f  = sum t_k, t_0 = 1,     t_{k+1} = t_k x^3/((3k+2)(3k+3))
    # f' = sum p_k, p_1 = x^2/2, p_{k+1} = p_k x^3 (k+1)/(k(3k+2)(3k+3))
    fh = np.ones_like(x)
    fl = np.zeros_like(x)
    th, tl = fh.copy(), fl.copy()
    ph, pl = _dd_div_d(x2h, x2l, 2.0)
    dfh, dfl = ph.copy(), pl.copy()
    for k in range(60):
        th, tl = _dd_mul(th, tl, x3h, x3l)
        th, tl = _dd_div_d(th, tl, float((3*k + 2)*(3*k + 3)))
        fh, fl = _dd_add(fh, fl, th, tl)
        kk = k + 1
        ph, pl = _dd_mul(ph, pl, x3h, x3l)
        ph, pl = _dd_mul_d(ph, pl, float(kk + 1))
        ph, pl = _dd_div_d(ph, pl, float(kk*(3*kk + 2)*(3*kk + 3)))
        dfh, dfl = _dd_add(dfh, dfl, ph, pl)

    # g  = sum s_k, s_0 = x, s_{k+1} = s_k x^3/((3k+3)(3k+4))
    # g' = sum q_k, q_0 = 1, q_{k+1} = q_k x^3 (3k+4)/((3k+1)(3k+3)(3k+4))
    gh = x.copy()
    gl = np.zeros_like(x)
    sh, sl = gh.copy(), gl.copy()
    dgh = np.ones_like(x)
    dgl = np.zeros_like(x)
    qh, ql = dgh.copy(), dgl.copy()
    for k in range(60):
        sh, sl = _dd_mul(sh, sl, x3h, x3l)
        sh, sl = _dd_div_d(sh, sl, float((3*k + 3)*(3*k + 4)))
        gh, gl = _dd_add(gh, gl, sh, sl)
        qh, ql = _dd_mul(qh, ql, x3h, x3l)
        qh, ql = _dd_mul_d(qh, ql, float(3*k + 4))
        qh, ql = _dd_div_d(qh, ql, float((3*k + 1)*(3*k + 3)*(3*k + 4)))
        dgh, dgl = _dd_add(dgh, dgl, qh, ql)

    ah, al = _dd_mul(AI0[0], AI0[1], fh, fl)
    bh, bl = _dd_mul(AIP0[0], AIP0[1], gh, gl)
    aih, _ = _dd_add(ah, al, bh, bl)
    ch, cl = _dd_mul(AI0[0], AI0[1], dfh, dfl)
    dh, dl = _dd_mul(AIP0[0], AIP0[1], dgh, dgl)
    aiph, _ = _dd_add(ch, cl, dh, dl)
    return aih, aiph


def _xi_dd(z):
    """(2/3) z^(3/2) as a dd pair, z > 0."""
    q = np.sqrt(z)
    th, tl = _two_prod(q, q)
    rh, _ = _dd_add(z, np.zeros_like(z), -th, -tl)
    sh, sl = _two_sum(q, rh/(2.0*q))
    th, tl = _dd_mul_d(sh, sl, z)
    th, tl = _dd_mul_d(th, tl, 2.0)
    return _dd_div_d(th, tl, 3.0)


def _airy_asym_pos(x):
    xih, _ = _xi_dd(x)
    inv = 1.0/xih
    su = np.ones_like(x)
    sv = np.ones_like(x)
    tu = np.ones_like(x)
    tv = np.ones_like(x)
    for k in range(1, 26):
        tu = tu*(-UKR[k])*inv
        tv = tv*(-VKR[k])*inv
        su = su + tu
        sv = sv + tv
    x14 = x**0.25
    pref = np.exp(-xih)/(2.0*_SQRT_PI)
    return pref*su/x14, -x14*pref*sv


def _airy_asym_neg(x):
    z = -x
    xih, xil = _xi_dd(z)
    k = np.floor(xih/TWOPI[0])
    th, tl = _dd_mul_d(TWOPI[0], TWOPI[1], k)
    rh, rl = _dd_add(xih, xil, -th, -tl)
    ph, pl = _dd_add(rh, rl, PIO4[0], PIO4[1])
    ang = ph + pl
    sn = np.sin(ang)
    cs = np.cos(ang)
    inv = 1.0/xih
    # split sum_k (-1)^(k//2) u_k xi^-k by parity of k
    se_u = np.ones_like(x)
    so_u = np.zeros_like(x)
    se_v = np.ones_like(x)
    so_v = np.zeros_like(x)
    tu = np.ones_like(x)
    tv = np.ones_like(x)
    for k in range(1, 26):
        tu = tu*UKR[k]*inv
        tv = tv*VKR[k]*inv
        s = -1.0 if (k//2) % 2 else 1.0
        if k % 2:
            so_u = so_u + s*tu
            so_v = so_v + s*tv
        else:
            se_u = se_u + s*tu
            se_v = se_v + s*tv
    z14 = z**0.25
    ai = (sn*se_u - cs*so_u)/(_SQRT_PI*z14)
    aip = -z14/_SQRT_PI*(cs*se_v + sn*so_v)
    return ai, aip


def airy_pair(x):
    """Ai(x), Ai'(x) elementwise for a float64 vector."""
    x = np.asarray(x, dtype=np.float64)
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    mid = np.abs(x) <= 9.0
    pos = x > 9.0
    neg = x < -9.0
    if mid.any():
        a, b = _airy_maclaurin(x[mid])
        ai[mid] = a
        aip[mid] = b
    if pos.any():
        a, b = _airy_asym_pos(x[pos])
        ai[pos] = a
        aip[pos] = b
    if neg.any():
        a, b = _airy_asym_neg(x[neg])
        ai[neg] = a
        aip[neg] = b
    return ai, aip


# ---------------------------------------------------------- PCF evaluator

def eta_theta(theta):
    """(theta - sin(theta)cos(theta))/2 without cancellation near 0."""
    theta = np.asarray(theta, dtype=np.float64)
    t2 = theta*theta
    acc = np.zeros_like(theta)
    for c in ETA_COEFFS[::-1]:
        acc = acc*t2 + c
    series = acc*t2*theta
    direct = (theta - np.sin(theta)*np.cos(theta))/2.0
    return np.where(theta < 0.5, series, direct)


def _pcf_parts_trig(mu2, theta):
    """phi, Airy argument, and expansion coefficients in closed trig form."""
    c = np.cos(theta)
    s = np.sin(theta)
    eta = eta_theta(theta)
    y = 1.5*eta
    w = np.cbrt(y)**2
    airy_arg = -np.cbrt(mu2*y)**2
    rw = np.sqrt(w)
    phi = np.sqrt(rw/s)
    q = rw*w/(s*s*s)

    c2 = c*c
    iw = 1.0/w
    iw2 = iw*iw
    iw3 = iw2*iw

    B0 = -(q*c*(c2 - 6.0)/24.0 + 5.0/48.0)*iw2
    P2 = c2*(c2*(c2/1152.0 - 1.0/96.0) + 7.0/32.0) + 1.0/8.0
    s2 = s*s
    s6 = s2*s2*s2
    A1 = -P2/s6 + (9.0/4.0)*(385.0/10368.0)*iw3 - (7.0/48.0)*B0*iw
    P3 = c*(c2*(c2*(c2*(-4027.0*c2 + 18054.0) - 27972.0) - 152280.0)
            - 259200.0)/414720.0
    s9 = s6*s2*s
    B1 = (P3/(rw*s9) + (27.0/8.0)*(85085.0/2239488.0)*iw3*iw2
          - (5.0/48.0)*A1*iw2 - (9.0/4.0)*(455.0/10368.0)*B0*iw3)
    Q1 = c*(c2 + 6.0)/24.0
    C0 = rw*Q1/(s2*s) - (7.0/48.0)*iw
    Q2 = c2*(c2*(c2/1152.0 + 1.0/96.0) - 9.0/32.0) - 1.0/8.0
    D1 = -Q2/s6 - (5.0/48.0)*C0*iw2 - (9.0/4.0)*(455.0/10368.0)*iw3
    Q3 = c*(c2*(c2*(c2*(-4027.0*c2 + 18234.0) - 36612.0) + 238680.0)
            + 259200.0)/414720.0
    C1 = (-rw*Q3/s9 + (9.0/4.0)*(385.0/10368.0)*C0*iw3
          + (27.0/8.0)*(95095.0/2239488.0)*iw3*iw - (7.0/48.0)*D1*iw)
    return phi, airy_arg, A1, B0, B1, C0, D1, C1


def _horner_even(coeffs, t2):
    acc = np.zeros_like(t2)
    for ck in coeffs[::-1]:
        acc = acc*t2 + ck
    return acc


def _pcf_parts_small(mu2, theta):
    """Series twin of _pcf_parts_trig for theta below PCF_SMALL_THETA.

    eta/theta^3 is taken straight from the eta series so nothing here
    underflows even at denormal theta.
    """
    t2 = theta*theta
    y3 = 1.5*_horner_even(ETA_COEFFS, t2)      # y/theta^3
    cb = np.cbrt(y3)
    phi = np.sqrt(cb*theta/np.sin(theta))
    airy_arg = -(np.cbrt(mu2*y3)*theta)**2
    A1 = _horner_even(A1_SMALL, t2)
    B0 = _horner_even(B0_SMALL, t2)
    B1 = _horner_even(B1_SMALL, t2)
    C0 = _horner_even(C0_SMALL, t2)
    D1 = _horner_even(D1_SMALL, t2)
    C1 = _horner_even(C1_SMALL, t2)
    return phi, airy_arg, A1, B0, B1, C0, D1, C1


def pcf_eval(n, theta):
    """Scaled parabolic-cylinder value and z-derivative at x = mu cos(theta).

    Four-term uniform Airy-type expansion; valid for theta in (0, pi/2].
    Returns (Ut, dUt) with |Ut| <= 1 up to truncation error.
    """
    theta = np.asarray(theta, dtype=np.float64)
    mu2 = 2.0*n + 1.0
    mu = np.sqrt(mu2)

    phi = np.empty_like(theta)
    airy_arg = np.empty_like(theta)
    A1 = np.empty_like(theta)
    B0 = np.empty_like(theta)
    B1 = np.empty_like(theta)
    C0 = np.empty_like(theta)
    D1 = np.empty_like(theta)
    C1 = np.empty_like(theta)
    small = theta < PCF_SMALL_THETA
    big = ~small
    if small.any():
        parts = _pcf_parts_small(mu2, theta[small])
        for dst, src in zip((phi, airy_arg, A1, B0, B1, C0, D1, C1), parts):
            dst[small] = src
    if big.any():
        parts = _pcf_parts_trig(mu2, theta[big])
        for dst, src in zip((phi, airy_arg, A1, B0, B1, C0, D1, C1), parts):
            dst[big] = src

    ai, aip = airy_pair(airy_arg)

    mu_third = np.cbrt(mu)
    m43 = 1.0/(mu*mu_third)
    m83 = m43*m43
    m4 = 1.0/(mu2*mu2)
    n14 = n**0.25

    SA = 1.0 + A1*m4
    SB = B0 + B1*m4
    SC = C0 + C1*m4
    SD = 1.0 + D1*m4

    Ut = 2.0**1.25*mu_third*(phi/n14)*(ai*SA + aip*m83*SB)
    dUt = 2.0**0.75*mu_third*mu_third*(1.0/(phi*n14))*(ai*m43*SC + aip*SD)
    return Ut, dUt


# ------------------------------------------------- scale-tracked recurrences

def hermite_rec_core(n, x):
    """Orthonormal (unweighted) Hermite values by scale-tracked recurrence.

    Returns (pn, pnm1, e) with h_n(x) = pn*2^e and h_{n-1}(x) = pnm1*2^e
    elementwise; carried mantissas are rescaled by 2^-8 whenever they leave
    [-1e2, 1e2].
    """
    x = np.asarray(x, dtype=np.float64)
    e = np.zeros_like(x)
    pm = np.full_like(x, _PI_M14)
    if n == 0:
        return pm, np.zeros_like(x), e
    p = _RT2*x*_PI_M14
    j = np.arange(1.0, n)
    aj = np.sqrt(2.0/(j + 1.0))
    cj = np.sqrt(j/(j + 1.0))
    for i in range(n - 1):
        t = aj[i]*x*p - cj[i]*pm
        pm = p
        p = t
        big = np.abs(p) > 1e2
        if big.any():
            sc = np.where(big, 0.00390625, 1.0)
            p = p*sc
            pm = pm*sc
            e = e + np.where(big, 8.0, 0.0)
    return p, pm, e


def freud_rec_core(n, b, x):
    """Monic three-term recurrence p_{k+1} = x p_k - b_k p_{k-1} with
    derivative, scale-tracked.

    b[k] is consumed for k = 1..n-1 (b[0] carries the zeroth moment by
    convention and is not used here).  Returns (pn, pnm1, dpn, e), all
    sharing the per-point exponent e: pi_n = pn*2^e etc.
    """
    x = np.asarray(x, dtype=np.float64)
    e = np.zeros_like(x)
    pm = np.ones_like(x)
    dpm = np.zeros_like(x)
    p = x.copy()
    dp = np.ones_like(x)
    if n == 0:
        return pm, np.zeros_like(x), dpm, e
    for k in range(1, n):
        t = x*p - b[k]*pm
        dt = p + x*dp - b[k]*dpm
        pm = p
        dpm = dp
        p = t
        dp = dt
        m = np.maximum(np.abs(p), np.abs(dp))
        big = m > 1e2
        if big.any():
            sc = np.where(big, 0.00390625, 1.0)
            p = p*sc
            pm = pm*sc
            dp = dp*sc
            dpm = dpm*sc
            e = e + np.where(big, 8.0, 0.0)
    return p, pm, dp, e


def exp_combine(m, e, lwh, lwl):
    """m * 2^e * exp(lwh + lwl), assembled in dd so huge cancelling
    exponents keep full double relative accuracy."""
    m = np.asarray(m, dtype=np.float64)
    s = np.sign(m)
    am = np.abs(m)
    # m == 0 sends log through -inf; the nan it breeds in the dd sums is
    # masked at the end, so silence the transient
    with np.errstate(divide="ignore", invalid="ignore"):
        lm = np.log(am)
        th, tl = _dd_mul_d(LN2[0], LN2[1], e)
        uh, ul = _dd_add(th, tl, lwh, lwl)
        vh, vl = _dd_add(uh, ul, lm, np.zeros_like(lm))
        out = s*np.exp(vh)*(1.0 + vl)
    return np.where(am == 0.0, 0.0, out)


def polyval_dd(c, x):
    """Horner evaluation of a real polynomial (coefficients highest power
    first, exact doubles) as a dd pair."""
    x = np.asarray(x, dtype=np.float64)
    ph = np.full_like(x, c[0])
    pl = np.zeros_like(x)
    for ci in c[1:]:
        ph, pl = _dd_mul(ph, pl, x, np.zeros_like(x))
        ph, pl = _dd_add(ph, pl, np.full_like(x, ci), np.zeros_like(x))
    return ph, pl


def stieltjes_core(n, x, g, lw):
    """Recurrence coefficients from a discretized weighted inner product.

    The carriers are the weighted orthonormal functions rho_k =
    phi_k e^{-V/2}; each grid value rides as mantissa * 2^exponent so the
    weight may underflow the double range at points the high-degree
    carriers later need.  lw holds -V(x)/2.  Returns (a, b, mu0); b entries
    are not validated here.
    """
    ln2 = 0.6931471805599453
    e = np.floor(lw/ln2)
    m = np.exp(lw - e*ln2)
    ei = e.astype(np.int64)
    mu0 = float(np.sum(g*np.ldexp(m*m, 2*ei)))
    a = np.empty(n)
    b = np.empty(n)
    mant = m/math.sqrt(mu0)
    mant, ad = np.frexp(mant)
    ei = ei + ad
    mantm = np.zeros_like(x)
    em = ei.copy()
    rb = 0.0
    gx = g*x
    for k in range(n):
        v2 = np.ldexp(mant*mant, 2*ei)
        ak = float(np.sum(gx*v2))
        base = np.maximum(ei, em)
        t = (x - ak)*np.ldexp(mant, ei - base) \
            - rb*np.ldexp(mantm, em - base)
        s2 = float(np.sum(g*np.ldexp(t*t, 2*base)))
        a[k] = ak
        b[k] = s2
        if not s2 > 0.0:
            break
        s = math.sqrt(s2)
        mantm = np.ldexp(mant, ei - base)
        em = base
        mant, ad = np.frexp(t/s)
        ei = base + ad
        rb = s
    return a, b, mu0
