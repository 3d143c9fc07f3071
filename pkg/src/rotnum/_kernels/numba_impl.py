"""Numba-jitted inner loops.

These are the hot kernels: cocycle orbit iteration (displacement sums and
position sampling), Sturm pivot counting, and path push-forwards.  Each
function has a drop-in twin in ``numpy_impl`` selected by the
``ROTNUM_BACKEND`` environment flag; keep signatures and floating-point
semantics in sync.

Conventions shared with the pure-Python map objects:

* circle points live in [0, 1);
* the transfer-matrix fiber map acts on unit vectors (angle/2pi coordinate)
  and its lift is anchored so that the image of 0 lies in [0.5, 1.5);
* displacement sums are Kahan-compensated so a 1e7-step orbit keeps
  ~1e-15 relative accuracy.
"""

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True, nogil=True)
def _schrod_forward_step(y, t):
    # image of y in [0,1) and lift displacement for the map induced by
    # the matrix (t, -1; 1, 0) on unit vectors, lift anchored at 0.5
    c = math.cos(TWO_PI * y)
    s = math.sin(TWO_PI * y)
    ang = math.atan2(c, t * c - s) / TWO_PI
    raw = ang - math.floor(ang)
    raw0 = math.atan2(1.0, t) / TWO_PI  # in (0, 0.5)
    d = raw - raw0
    if d < 0.0:
        d += 1.0
    disp = raw0 + 1.0 + d - y
    return raw, disp


@njit(cache=True, nogil=True)
def _schrod_backward_step(z, t):
    # image of z under the inverse map, i.e. the action of (0, 1; -1, t)
    c = math.cos(TWO_PI * z)
    s = math.sin(TWO_PI * z)
    ang = math.atan2(t * s - c, s) / TWO_PI
    return ang - math.floor(ang)


@njit(cache=True, nogil=True)
def schrod_displacement_batch(t, y0):
    """Total lift displacement of the transfer cocycle along each row of t.

    t : (R, n) array of (E - potential) values, y0 : (R,) start points.
    Returns (S, y_end) with S the Kahan-compensated displacement sum.
    """
    rows, n = t.shape
    out_s = np.empty(rows)
    out_y = np.empty(rows)
    for r in range(rows):
        y = y0[r]
        acc = 0.0
        comp = 0.0
        for i in range(n):
            y, disp = _schrod_forward_step(y, t[r, i])
            term = disp - comp
            tot = acc + term
            comp = (tot - acc) - term
            acc = tot
        out_s[r] = acc
        out_y[r] = y
    return out_s, out_y


@njit(cache=True, nogil=True)
def schrod_samples(t, y0, out):
    """Forward orbit positions after each step; returns the final point."""
    y = y0
    for i in range(t.shape[0]):
        y, _ = _schrod_forward_step(y, t[i])
        out[i] = y
    return y


@njit(cache=True, nogil=True)
def schrod_backward_samples(t, z0, out):
    z = z0
    for i in range(t.shape[0]):
        z = _schrod_backward_step(z, t[i])
        out[i] = z
    return z


@njit(cache=True, nogil=True)
def schrod_push_batch(t, y0, forward):
    """Push the single point y0 through each row of t; returns endpoints."""
    rows, n = t.shape
    out = np.empty(rows)
    for r in range(rows):
        y = y0
        if forward:
            for i in range(n):
                y, _ = _schrod_forward_step(y, t[r, i])
        else:
            for i in range(n):
                y = _schrod_backward_step(y, t[r, i])
        out[r] = y
    return out


@njit(cache=True, nogil=True)
def sturm_count_batch(v, e):
    """Eigenvalues strictly below e of tridiag(1, v[r], 1), one per row.

    Negative-pivot count of the shifted LDL^T recursion; exact zero pivots
    are nudged to -eps*(1+|e|) which preserves the inertia count.
    """
    rows, n = v.shape
    tiny = np.finfo(np.float64).eps * (1.0 + abs(e))
    out = np.empty(rows, dtype=np.int64)
    for r in range(rows):
        cnt = 0
        d = 1.0
        for i in range(n):
            if i == 0:
                d = v[r, 0] - e
            else:
                d = v[r, i] - e - 1.0 / d
            if d == 0.0:
                d = -tiny
            if d < 0.0:
                cnt += 1
        out[r] = cnt
    return out


@njit(cache=True, nogil=True)
def _ms_inverse(z, c):
    # solve q - c*sin(2*pi*q) = z on [z-c, z+c]: 10 bisections then Newton
    lo = z - c
    hi = z + c
    for _ in range(10):
        mid = 0.5 * (lo + hi)
        if mid - c * math.sin(TWO_PI * mid) < z:
            lo = mid
        else:
            hi = mid
    q = 0.5 * (lo + hi)
    for _ in range(4):
        f = q - c * math.sin(TWO_PI * q) - z
        fp = 1.0 - c * TWO_PI * math.cos(TWO_PI * q)
        q -= f / fp
    return q


@njit(cache=True, nogil=True)
def ms_pair_displacement_batch(coins, e, s, y0):
    """Random composition of R_e∘f (coin 0) and R_e∘f^{-1} (coin 1).

    f is the two-fixed-point map y - (s/2pi) sin(2pi y); lifts anchored so
    both maps send 0 to e.  coins : (R, n) uint8, y0 : (R,).
    """
    c = s / TWO_PI
    rows, n = coins.shape
    out_s = np.empty(rows)
    out_y = np.empty(rows)
    for r in range(rows):
        y = y0[r]
        acc = 0.0
        comp = 0.0
        for i in range(n):
            if coins[r, i] == 0:
                z = y - c * math.sin(TWO_PI * y) + e
            else:
                z = _ms_inverse(y, c) + e
            disp = z - y
            y = z - math.floor(z)
            term = disp - comp
            tot = acc + term
            comp = (tot - acc) - term
            acc = tot
        out_s[r] = acc
        out_y[r] = y
    return out_s, out_y


@njit(cache=True, nogil=True)
def ms_pair_samples(coins, e, s, y0, out):
    c = s / TWO_PI
    y = y0
    for i in range(coins.shape[0]):
        if coins[i] == 0:
            z = y - c * math.sin(TWO_PI * y) + e
        else:
            z = _ms_inverse(y, c) + e
        y = z - math.floor(z)
        out[i] = y
    return y


@njit(cache=True, nogil=True)
def ms_pair_backward_samples(coins, e, s, z0, out):
    # inverse maps: (R_e∘f)^{-1} = f^{-1}∘R_{-e}, (R_e∘f^{-1})^{-1} = f∘R_{-e}
    c = s / TWO_PI
    z = z0
    for i in range(coins.shape[0]):
        w = z - e
        if coins[i] == 0:
            q = _ms_inverse(w, c)
        else:
            q = w - c * math.sin(TWO_PI * w)
        z = q - math.floor(q)
        out[i] = z
    return z
