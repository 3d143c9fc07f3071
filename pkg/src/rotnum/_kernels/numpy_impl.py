"""Pure NumPy fallback for the jitted kernels.

Same contracts as ``numba_impl``.  Sequential recursions cannot be
vectorized along the time axis, so batch kernels vectorize across rows
(replicas) instead and single-orbit kernels fall back to Python loops.
Intended for environments without numba and for cross-checking the jitted
code; sizes in the test suite stay small on this path.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def _schrod_forward_step_vec(y, t):
    c = np.cos(TWO_PI * y)
    s = np.sin(TWO_PI * y)
    ang = np.arctan2(c, t * c - s) / TWO_PI
    raw = ang - np.floor(ang)
    raw0 = np.arctan2(1.0, t) / TWO_PI
    d = raw - raw0
    d = np.where(d < 0.0, d + 1.0, d)
    disp = raw0 + 1.0 + d - y
    return raw, disp


def _schrod_backward_step_vec(z, t):
    c = np.cos(TWO_PI * z)
    s = np.sin(TWO_PI * z)
    ang = np.arctan2(t * s - c, s) / TWO_PI
    return ang - np.floor(ang)


def schrod_displacement_batch(t, y0):
    rows, n = t.shape
    y = y0.copy()
    acc = np.zeros(rows)
    comp = np.zeros(rows)
    for i in range(n):
        y, disp = _schrod_forward_step_vec(y, t[:, i])
        term = disp - comp
        tot = acc + term
        comp = (tot - acc) - term
        acc = tot
    return acc, y


def schrod_samples(t, y0, out):
    y = np.float64(y0)
    for i in range(t.shape[0]):
        y, _ = _schrod_forward_step_vec(y, t[i])
        out[i] = y
    return float(y)


def schrod_backward_samples(t, z0, out):
    z = np.float64(z0)
    for i in range(t.shape[0]):
        z = _schrod_backward_step_vec(z, t[i])
        out[i] = z
    return float(z)


def schrod_push_batch(t, y0, forward):
    rows, n = t.shape
    y = np.full(rows, y0)
    if forward:
        for i in range(n):
            y, _ = _schrod_forward_step_vec(y, t[:, i])
    else:
        for i in range(n):
            y = _schrod_backward_step_vec(y, t[:, i])
    return y


def sturm_count_batch(v, e):
    rows, n = v.shape
    tiny = np.finfo(np.float64).eps * (1.0 + abs(e))
    cnt = np.zeros(rows, dtype=np.int64)
    d = v[:, 0] - e
    d = np.where(d == 0.0, -tiny, d)
    cnt += d < 0.0
    for i in range(1, n):
        d = v[:, i] - e - 1.0 / d
        d = np.where(d == 0.0, -tiny, d)
        cnt += d < 0.0
    return cnt


def _ms_inverse_vec(z, c):
    lo = z - c
    hi = z + c
    for _ in range(10):
        mid = 0.5 * (lo + hi)
        below = mid - c * np.sin(TWO_PI * mid) < z
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    q = 0.5 * (lo + hi)
    for _ in range(4):
        f = q - c * np.sin(TWO_PI * q) - z
        fp = 1.0 - c * TWO_PI * np.cos(TWO_PI * q)
        q = q - f / fp
    return q


def _ms_pair_step_vec(y, coin, e, c):
    fwd = y - c * np.sin(TWO_PI * y) + e
    bwd = _ms_inverse_vec(y, c) + e
    z = np.where(coin == 0, fwd, bwd)
    disp = z - y
    return z - np.floor(z), disp


def ms_pair_displacement_batch(coins, e, s, y0):
    c = s / TWO_PI
    rows, n = coins.shape
    y = y0.copy()
    acc = np.zeros(rows)
    comp = np.zeros(rows)
    for i in range(n):
        y, disp = _ms_pair_step_vec(y, coins[:, i], e, c)
        term = disp - comp
        tot = acc + term
        comp = (tot - acc) - term
        acc = tot
    return acc, y


def ms_pair_samples(coins, e, s, y0, out):
    c = s / TWO_PI
    y = np.float64(y0)
    for i in range(coins.shape[0]):
        y, _ = _ms_pair_step_vec(y, coins[i], e, c)
        out[i] = y
    return float(y)


def ms_pair_backward_samples(coins, e, s, z0, out):
    c = s / TWO_PI
    z = np.float64(z0)
    for i in range(coins.shape[0]):
        w = z - e
        q = np.where(coins[i] == 0, _ms_inverse_vec(w, c),
                     w - c * np.sin(TWO_PI * w))
        z = q - np.floor(q)
        out[i] = z
    return float(z)
