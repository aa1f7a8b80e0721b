"""Numba-jitted twin of _kernels_np.

Same public names, signatures, and term ordering; explicit per-element
loops instead of whole-array ufuncs.  Series keep the fixed iteration
counts of the numpy backend so results are deterministic per element.
"""
import math

import numpy as np
from numba import njit

from .constants import (AI0, AIP0, TWOPI, PIO4, LN2, UKR, VKR,
                        ETA_COEFFS, PCF_SMALL_THETA, A1_SMALL, B0_SMALL,
                        B1_SMALL, C0_SMALL, D1_SMALL, C1_SMALL)

_SQRT_PI = 1.7724538509055160273
_PI_M14 = 0.7511255444649425
_RT2 = 1.4142135623730951

_AI0H, _AI0L = AI0
_AIP0H, _AIP0L = AIP0
_TWOPIH, _TWOPIL = TWOPI
_PIO4H, _PIO4L = PIO4
_LN2H, _LN2L = LN2


@njit(cache=True)
def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


@njit(cache=True)
def _two_prod(a, b):
    p = a*b
    ca = 134217729.0*a
    ah = ca - (ca - a)
    al = a - ah
    cb = 134217729.0*b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah*bh - p) + ah*bl + al*bh) + al*bl


@njit(cache=True)
def _dd_add(ah, al, bh, bl):
    sh, se = _two_sum(ah, bh)
    se = se + (al + bl)
    return _two_sum(sh, se)


@njit(cache=True)
def _dd_mul(ah, al, bh, bl):
    ph, pe = _two_prod(ah, bh)
    pe = pe + (ah*bl + al*bh)
    return _two_sum(ph, pe)


@njit(cache=True)
def _dd_mul_d(ah, al, b):
    ph, pe = _two_prod(ah, b)
    pe = pe + al*b
    return _two_sum(ph, pe)


@njit(cache=True)
def _dd_div_d(ah, al, d):
    q1 = ah/d
    th, tl = _two_prod(q1, d)
    rh, rl = _dd_add(ah, al, -th, -tl)
    return _two_sum(q1, (rh + rl)/d)


@njit(cache=True)
def _airy_maclaurin(x):
    x2h, x2l = _two_prod(x, x)
    x3h, x3l = _dd_mul_d(x2h, x2l, x)

    fh, fl = 1.0, 0.0
    th, tl = 1.0, 0.0
    ph, pl = _dd_div_d(x2h, x2l, 2.0)
    dfh, dfl = ph, pl
    for k in range(60):
        th, tl = _dd_mul(th, tl, x3h, x3l)
        th, tl = _dd_div_d(th, tl, float((3*k + 2)*(3*k + 3)))
        fh, fl = _dd_add(fh, fl, th, tl)
        kk = k + 1
        ph, pl = _dd_mul(ph, pl, x3h, x3l)
        ph, pl = _dd_mul_d(ph, pl, float(kk + 1))
        ph, pl = _dd_div_d(ph, pl, float(kk*(3*kk + 2)*(3*kk + 3)))
        dfh, dfl = _dd_add(dfh, dfl, ph, pl)

    gh, gl = x, 0.0
    sh, sl = x, 0.0
    dgh, dgl = 1.0, 0.0
    qh, ql = 1.0, 0.0
    for k in range(60):
        sh, sl = _dd_mul(sh, sl, x3h, x3l)
        sh, sl = _dd_div_d(sh, sl, float((3*k + 3)*(3*k + 4)))
        gh, gl = _dd_add(gh, gl, sh, sl)
        qh, ql = _dd_mul(qh, ql, x3h, x3l)
        qh, ql = _dd_mul_d(qh, ql, float(3*k + 4))
        qh, ql = _dd_div_d(qh, ql, float((3*k + 1)*(3*k + 3)*(3*k + 4)))
        dgh, dgl = _dd_add(dgh, dgl, qh, ql)

    ah, al = _dd_mul(_AI0H, _AI0L, fh, fl)
    bh, bl = _dd_mul(_AIP0H, _AIP0L, gh, gl)
    aih, _ = _dd_add(ah, al, bh, bl)
    ch, cl = _dd_mul(_AI0H, _AI0L, dfh, dfl)
    dh, dl = _dd_mul(_AIP0H, _AIP0L, dgh, dgl)
    aiph, _ = _dd_add(ch, cl, dh, dl)
    return aih, aiph


@njit(cache=True)
def _xi_dd(z):
    q = math.sqrt(z)
    th, tl = _two_prod(q, q)
    rh, _ = _dd_add(z, 0.0, -th, -tl)
    sh, sl = _two_sum(q, rh/(2.0*q))
    th, tl = _dd_mul_d(sh, sl, z)
    th, tl = _dd_mul_d(th, tl, 2.0)
    return _dd_div_d(th, tl, 3.0)


@njit(cache=True)
def _airy_asym_pos(x):
    xih, _ = _xi_dd(x)
    inv = 1.0/xih
    su = 1.0
    sv = 1.0
    tu = 1.0
    tv = 1.0
    for k in range(1, 26):
        tu = tu*(-UKR[k])*inv
        tv = tv*(-VKR[k])*inv
        su = su + tu
        sv = sv + tv
    x14 = x**0.25
    pref = math.exp(-xih)/(2.0*_SQRT_PI)
    return pref*su/x14, -x14*pref*sv


@njit(cache=True)
def _airy_asym_neg(x):
    z = -x
    xih, xil = _xi_dd(z)
    k = math.floor(xih/_TWOPIH)
    th, tl = _dd_mul_d(_TWOPIH, _TWOPIL, k)
    rh, rl = _dd_add(xih, xil, -th, -tl)
    ph, pl = _dd_add(rh, rl, _PIO4H, _PIO4L)
    ang = ph + pl
    sn = math.sin(ang)
    cs = math.cos(ang)
    inv = 1.0/xih
    se_u = 1.0
    so_u = 0.0
    se_v = 1.0
    so_v = 0.0
    tu = 1.0
    tv = 1.0
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


@njit(cache=True)
def _airy_scalar(x):
    if x > 9.0:
        return _airy_asym_pos(x)
    if x < -9.0:
        return _airy_asym_neg(x)
    return _airy_maclaurin(x)


@njit(cache=True)
def airy_pair(x):
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    for i in range(x.shape[0]):
        ai[i], aip[i] = _airy_scalar(x[i])
    return ai, aip


@njit(cache=True)
def _eta_scalar(t):
    if t < 0.5:
        t2 = t*t
        acc = 0.0
        for j in range(ETA_COEFFS.shape[0] - 1, -1, -1):
            acc = acc*t2 + ETA_COEFFS[j]
        return acc*t2*t
    return (t - math.sin(t)*math.cos(t))/2.0


@njit(cache=True)
def eta_theta(theta):
    out = np.empty_like(theta)
    for i in range(theta.shape[0]):
        out[i] = _eta_scalar(theta[i])
    return out


@njit(cache=True)
def _horner_even(coeffs, t2):
    acc = 0.0
    for j in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc*t2 + coeffs[j]
    return acc


@njit(cache=True)
def _pcf_scalar(n, mu2, mu, n14, t):
    if t < PCF_SMALL_THETA:
        # turning-point series; eta/theta^3 keeps denormal theta safe
        t2 = t*t
        y3 = 1.5*_horner_even(ETA_COEFFS, t2)
        cb = np.cbrt(y3)
        phi = math.sqrt(cb*t/math.sin(t))
        airy_arg = -(np.cbrt(mu2*y3)*t)**2
        A1 = _horner_even(A1_SMALL, t2)
        B0 = _horner_even(B0_SMALL, t2)
        B1 = _horner_even(B1_SMALL, t2)
        C0 = _horner_even(C0_SMALL, t2)
        D1 = _horner_even(D1_SMALL, t2)
        C1 = _horner_even(C1_SMALL, t2)
    else:
        c = math.cos(t)
        s = math.sin(t)
        eta = _eta_scalar(t)
        y = 1.5*eta
        w = np.cbrt(y)**2
        airy_arg = -np.cbrt(mu2*y)**2
        rw = math.sqrt(w)
        phi = math.sqrt(rw/s)
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

    ai, aip = _airy_scalar(airy_arg)

    mu_third = np.cbrt(mu)
    m43 = 1.0/(mu*mu_third)
    m83 = m43*m43
    m4 = 1.0/(mu2*mu2)

    SA = 1.0 + A1*m4
    SB = B0 + B1*m4
    SC = C0 + C1*m4
    SD = 1.0 + D1*m4

    Ut = 2.0**1.25*mu_third*(phi/n14)*(ai*SA + aip*m83*SB)
    dUt = 2.0**0.75*mu_third*mu_third*(1.0/(phi*n14))*(ai*m43*SC + aip*SD)
    return Ut, dUt


@njit(cache=True)
def pcf_eval(n, theta):
    mu2 = 2.0*n + 1.0
    mu = math.sqrt(mu2)
    n14 = n**0.25
    Ut = np.empty_like(theta)
    dUt = np.empty_like(theta)
    for i in range(theta.shape[0]):
        Ut[i], dUt[i] = _pcf_scalar(n, mu2, mu, n14, theta[i])
    return Ut, dUt


@njit(cache=True)
def hermite_rec_core(n, x):
    pts = x.shape[0]
    e = np.zeros(pts)
    pn = np.empty(pts)
    pnm1 = np.empty(pts)
    aj = np.sqrt(2.0/(np.arange(1.0, max(n, 2)) + 1.0))
    cj = np.sqrt(np.arange(1.0, max(n, 2))/(np.arange(1.0, max(n, 2)) + 1.0))
    for i in range(pts):
        xi = x[i]
        pm = _PI_M14
        if n == 0:
            pn[i] = pm
            pnm1[i] = 0.0
            continue
        p = _RT2*xi*_PI_M14
        ei = 0.0
        for k in range(n - 1):
            t = aj[k]*xi*p - cj[k]*pm
            pm = p
            p = t
            if abs(p) > 1e2:
                p = p*0.00390625
                pm = pm*0.00390625
                ei = ei + 8.0
        pn[i] = p
        pnm1[i] = pm
        e[i] = ei
    return pn, pnm1, e


@njit(cache=True)
def freud_rec_core(n, b, x):
    pts = x.shape[0]
    e = np.zeros(pts)
    pn = np.empty(pts)
    pnm1 = np.empty(pts)
    dpn = np.empty(pts)
    for i in range(pts):
        xi = x[i]
        pm = 1.0
        dpm = 0.0
        p = xi
        dp = 1.0
        ei = 0.0
        if n == 0:
            pn[i] = 1.0
            pnm1[i] = 0.0
            dpn[i] = 0.0
            continue
        for k in range(1, n):
            t = xi*p - b[k]*pm
            dt = p + xi*dp - b[k]*dpm
            pm = p
            dpm = dp
            p = t
            dp = dt
            m = max(abs(p), abs(dp))
            if m > 1e2:
                p = p*0.00390625
                pm = pm*0.00390625
                dp = dp*0.00390625
                dpm = dpm*0.00390625
                ei = ei + 8.0
        pn[i] = p
        pnm1[i] = pm
        dpn[i] = dp
        e[i] = ei
    return pn, pnm1, dpn, e


@njit(cache=True)
def exp_combine(m, e, lwh, lwl):
    out = np.empty_like(m)
    for i in range(m.shape[0]):
        mi = m[i]
        if mi == 0.0:
            out[i] = 0.0
            continue
        s = 1.0 if mi > 0.0 else -1.0
        lm = math.log(abs(mi))
        th, tl = _dd_mul_d(_LN2H, _LN2L, e[i])
        uh, ul = _dd_add(th, tl, lwh[i], lwl[i])
        vh, vl = _dd_add(uh, ul, lm, 0.0)
        out[i] = s*math.exp(vh)*(1.0 + vl)
    return out


@njit(cache=True)
def polyval_dd(c, x):
    pts = x.shape[0]
    ph = np.empty(pts)
    pl = np.empty(pts)
    for i in range(pts):
        xi = x[i]
        h = c[0]
        l = 0.0
        for j in range(1, c.shape[0]):
            h, l = _dd_mul_d(h, l, xi)
            h, l = _dd_add(h, l, c[j], 0.0)
        ph[i] = h
        pl[i] = l
    return ph, pl


@njit(cache=True)
def stieltjes_core(n, x, g, lw):
    ln2 = 0.6931471805599453
    pts = x.shape[0]
    mant = np.empty(pts)
    ei = np.empty(pts, dtype=np.int64)
    mu0 = 0.0
    for i in range(pts):
        e = math.floor(lw[i]/ln2)
        m = math.exp(lw[i] - e*ln2)
        ei[i] = np.int64(e)
        mant[i] = m
        mu0 += g[i]*math.ldexp(m*m, 2*np.int64(e))
    a = np.empty(n)
    b = np.empty(n)
    s0 = math.sqrt(mu0)
    for i in range(pts):
        fm, fe = math.frexp(mant[i]/s0)
        mant[i] = fm
        ei[i] += fe
    mantm = np.zeros(pts)
    em = ei.copy()
    rb = 0.0
    t = np.empty(pts)
    base = np.empty(pts, dtype=np.int64)
    for k in range(n):
        ak = 0.0
        for i in range(pts):
            ak += g[i]*x[i]*math.ldexp(mant[i]*mant[i], 2*ei[i])
        s2 = 0.0
        for i in range(pts):
            bi = ei[i] if ei[i] > em[i] else em[i]
            ti = (x[i] - ak)*math.ldexp(mant[i], int(ei[i] - bi)) \
                - rb*math.ldexp(mantm[i], int(em[i] - bi))
            t[i] = ti
            base[i] = bi
            s2 += g[i]*math.ldexp(ti*ti, int(2*bi))
        a[k] = ak
        b[k] = s2
        if not s2 > 0.0:
            break
        s = math.sqrt(s2)
        for i in range(pts):
            mantm[i] = math.ldexp(mant[i], int(ei[i] - base[i]))
            em[i] = base[i]
            fm, fe = math.frexp(t[i]/s)
            mant[i] = fm
            ei[i] = base[i] + fe
        rb = s
    return a, b, mu0
