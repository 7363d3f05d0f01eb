"""Numba implementation of the map kernels (default backend when available).

Scalar helpers mirror the vectorized formulas of the numpy backend and
of bump/surgery; fastmath stays off so both backends agree to float
rounding, and runs with a fixed seed stay reproducible per backend.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from numba import NumbaWarning, njit, prange

# the TBB version probe warns on some images; the fallback layer is fine
warnings.filterwarnings("ignore", category=NumbaWarning, message=".*TBB.*")

NAME = "numba"

TWO_PI = 2.0 * math.pi
_FIBER_SLOPES = np.array([0.0, 0.5, -3.0, 3.0, 0.0])


@njit(cache=True, inline="always")
def _reduce(t):
    r = t % 1.0
    if r >= 1.0:
        return 0.0
    return r


@njit(cache=True, inline="always")
def _wrap(t):
    # representative of t in (-1/2, 1/2]
    d = t % 1.0
    if d > 0.5:
        return d - 1.0
    return d


@njit(cache=True, inline="always")
def _wrapdist(a, b):
    d = abs(a - b) % 1.0
    if d > 0.5:
        return 1.0 - d
    return d


@njit(cache=True, inline="always")
def _exp_step(t):
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    a = math.exp(-1.0 / t)
    b = math.exp(-1.0 / (1.0 - t))
    return a / (a + b)


@njit(cache=True, inline="always")
def _exp_step_deriv(t):
    if t <= 0.0 or t >= 1.0:
        return 0.0
    a = math.exp(-1.0 / t)
    b = math.exp(-1.0 / (1.0 - t))
    return (a * b * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)))) / ((a + b) * (a + b))


@njit(cache=True, inline="always")
def _unit_bump(t):
    if t < 1.0:
        return math.exp(1.0 - 1.0 / (1.0 - t))
    return 0.0


@njit(cache=True, inline="always")
def _unit_bump_deriv(t):
    if t < 1.0:
        return -math.exp(1.0 - 1.0 / (1.0 - t)) / ((1.0 - t) * (1.0 - t))
    return 0.0


@njit(cache=True, inline="always")
def _gate(arg, theta):
    z = (arg - 0.0625) / theta
    return 2.0 * _unit_bump(z * z)


@njit(cache=True, inline="always")
def _gate_deriv(arg, theta):
    z = (arg - 0.0625) / theta
    return 2.0 * _unit_bump_deriv(z * z) * 2.0 * z / theta


@njit(cache=True, inline="always")
def _fiber_value(w, delta):
    L = delta / 4.0
    k0 = 0.25 + (-1.0) * delta / 4.0
    k4 = 0.25 + 3.0 * delta / 4.0
    if w <= k0 or w >= k4:
        return 0.0
    seg = int((w - k0) / L)
    if seg > 3:
        seg = 3
    kseg = 0.25 + (seg - 1.0) * delta / 4.0
    tau = (w - kseg) / L
    h1 = tau - 6.0 * tau**3 + 8.0 * tau**4 - 3.0 * tau**5
    h4 = -4.0 * tau**3 + 7.0 * tau**4 - 3.0 * tau**5
    return L * (_FIBER_SLOPES[seg] * h1 + _FIBER_SLOPES[seg + 1] * h4)


@njit(cache=True, inline="always")
def _fiber_deriv(w, delta):
    L = delta / 4.0
    k0 = 0.25 + (-1.0) * delta / 4.0
    k4 = 0.25 + 3.0 * delta / 4.0
    if w <= k0 or w >= k4:
        return 0.0
    seg = int((w - k0) / L)
    if seg > 3:
        seg = 3
    kseg = 0.25 + (seg - 1.0) * delta / 4.0
    tau = (w - kseg) / L
    dh1 = 1.0 - 18.0 * tau**2 + 32.0 * tau**3 - 15.0 * tau**4
    dh4 = -12.0 * tau**2 + 28.0 * tau**3 - 15.0 * tau**4
    return _FIBER_SLOPES[seg] * dh1 + _FIBER_SLOPES[seg + 1] * dh4


@njit(cache=True, inline="always")
def _box_value(pt, i, centers, halves, eps, m1):
    v = 1.0
    for j in range(m1):
        t = (_wrapdist(pt[i, j], centers[j]) - halves[j]) / eps
        v *= 1.0 - _exp_step(t)
        if v == 0.0:
            return 0.0
    return v


@njit(cache=True, parallel=True)
def step_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
               sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    out = np.empty_like(pts)
    nb = pc.shape[0]
    for i in prange(n):
        for j in range(m1):
            out[i, j] = _reduce(K * pts[i, j])
        y = pts[i, m1]
        v_u = _box_value(pts, i, uc, uh, eps, m1)
        v_v = _box_value(pts, i, vc, vh, eps, m1)
        if v_u >= v_v:
            u = v_u
            ynew = y if u == 0.0 else _reduce(y + u * (-beta * math.sin(TWO_PI * y)))
        else:
            u = v_v
            if u == 1.0:
                ynew = _reduce(y + alpha)
            else:
                ynew = _reduce(y + u * dalpha)
        if sur_on:
            rho2 = 0.0
            for j in range(d):
                dd = _wrapdist(pts[i, j], s[j])
                rho2 += dd * dd
            if rho2 < r * r:
                arg = 0.0
                for j in range(m1):
                    lift = off[j] + _wrap(pts[i, j] - off[j])
                    arg += lift * lift
                w = off[m1] + _wrap(y - off[m1])
                ynew = _reduce(w - _fiber_value(w, delta) * _gate(arg, theta))
        out[i, m1] = ynew
        if pscale != 0.0:
            for j in range(d):
                z = 0.0
                for b in range(nb):
                    rho2p = 0.0
                    for jj in range(d):
                        lift = _wrap(pts[i, jj] - pc[b, jj])
                        rho2p += lift * lift
                    z += pamp[b] * _unit_bump(rho2p / (pw[b] * pw[b])) * pdir[b, j]
                out[i, j] = _reduce(out[i, j] + z * pscale)
    return out


@njit(cache=True, parallel=True)
def jac_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
              sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    J = np.zeros((n, d, d))
    nb = pc.shape[0]
    for i in prange(n):
        for j in range(m1):
            J[i, j, j] = K
        y = pts[i, m1]
        v_u = _box_value(pts, i, uc, uh, eps, m1)
        v_v = _box_value(pts, i, vc, vh, eps, m1)
        if v_u >= v_v:
            u = v_u
            disp = -beta * math.sin(TWO_PI * y)
            ddisp = -TWO_PI * beta * math.cos(TWO_PI * y)
            centers, halves = uc, uh
        else:
            u = v_v
            disp = dalpha
            ddisp = 0.0
            centers, halves = vc, vh
        if 0.0 < u < 1.0:
            # gradient of the active box's ramp product
            for j in range(m1):
                t_j = (_wrapdist(pts[i, j], centers[j]) - halves[j]) / eps
                ds = -_exp_step_deriv(t_j) / eps
                if ds != 0.0:
                    lift = _wrap(pts[i, j] - centers[j])
                    sign = 1.0 if lift > 0.0 else (-1.0 if lift < 0.0 else 0.0)
                    others = 1.0
                    for jj in range(m1):
                        if jj != j:
                            t_o = (_wrapdist(pts[i, jj], centers[jj]) - halves[jj]) / eps
                            others *= 1.0 - _exp_step(t_o)
                    J[i, m1, j] = ds * sign * others * disp
        J[i, m1, m1] = 1.0 + u * ddisp
        if sur_on:
            rho2 = 0.0
            for j in range(d):
                dd = _wrapdist(pts[i, j], s[j])
                rho2 += dd * dd
            if rho2 < r * r:
                arg = 0.0
                for j in range(m1):
                    lift = off[j] + _wrap(pts[i, j] - off[j])
                    arg += lift * lift
                w = off[m1] + _wrap(y - off[m1])
                fv = _fiber_value(w, delta)
                gd = _gate_deriv(arg, theta)
                for j in range(m1):
                    lift = off[j] + _wrap(pts[i, j] - off[j])
                    J[i, m1, j] = -fv * gd * 2.0 * lift
                J[i, m1, m1] = 1.0 - _fiber_deriv(w, delta) * _gate(arg, theta)
        if pscale != 0.0:
            for b in range(nb):
                rho2p = 0.0
                for jj in range(d):
                    lift = _wrap(pts[i, jj] - pc[b, jj])
                    rho2p += lift * lift
                md = pamp[b] * _unit_bump_deriv(rho2p / (pw[b] * pw[b])) * 2.0 / (pw[b] * pw[b])
                if md != 0.0:
                    for jr in range(d):
                        for jc in range(d):
                            lift = _wrap(pts[i, jc] - pc[b, jc])
                            J[i, jr, jc] += pscale * md * pdir[b, jr] * lift
    return J


@njit(cache=True, parallel=True)
def det_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
              sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    out = np.empty(n)
    if pscale == 0.0:
        km = K**m1
        for i in prange(n):
            y = pts[i, m1]
            v_u = _box_value(pts, i, uc, uh, eps, m1)
            v_v = _box_value(pts, i, vc, vh, eps, m1)
            if v_u >= v_v:
                factor = 1.0 + v_u * (-TWO_PI * beta * math.cos(TWO_PI * y))
            else:
                factor = 1.0
            if sur_on:
                rho2 = 0.0
                for j in range(d):
                    dd = _wrapdist(pts[i, j], s[j])
                    rho2 += dd * dd
                if rho2 < r * r:
                    arg = 0.0
                    for j in range(m1):
                        lift = off[j] + _wrap(pts[i, j] - off[j])
                        arg += lift * lift
                    w = off[m1] + _wrap(y - off[m1])
                    factor = 1.0 - _fiber_deriv(w, delta) * _gate(arg, theta)
            out[i] = km * factor
        return out
    J = jac_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
                  sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale)
    for i in prange(n):
        if d == 2:
            out[i] = J[i, 0, 0] * J[i, 1, 1] - J[i, 0, 1] * J[i, 1, 0]
        else:
            out[i] = (
                J[i, 0, 0] * (J[i, 1, 1] * J[i, 2, 2] - J[i, 1, 2] * J[i, 2, 1])
                - J[i, 0, 1] * (J[i, 1, 0] * J[i, 2, 2] - J[i, 1, 2] * J[i, 2, 0])
                + J[i, 0, 2] * (J[i, 1, 0] * J[i, 2, 1] - J[i, 1, 1] * J[i, 2, 0])
            )
    return out


@njit(cache=True, parallel=True)
def graph_diameter(indptr, indices, n):
    """All-pairs BFS over a CSR digraph; -1 when some pair is unreachable."""
    ecc = np.empty(n, dtype=np.int64)
    for src in prange(n):
        dist = np.full(n, -1, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        head, tail = 0, 0
        dist[src] = 0
        queue[tail] = src
        tail += 1
        reached = 1
        far = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    if dv + 1 > far:
                        far = dv + 1
                    queue[tail] = w
                    tail += 1
                    reached += 1
        ecc[src] = far if reached == n else -1
    diam = 0
    for src in range(n):
        if ecc[src] < 0:
            return -1
        if ecc[src] > diam:
            diam = ecc[src]
    return diam
