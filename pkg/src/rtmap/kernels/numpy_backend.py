"""Vectorized numpy implementation of the map kernels (fallback backend)."""

from __future__ import annotations

import numpy as np

from ..bump import unit_bump, unit_bump_deriv
from ..geometry import Arc, Box, reduce_coords, signed_lift

NAME = "numpy"


def _bump_parts(x, uc, uh, vc, vh, eps):
    """Cutoff value, active-branch mask and the profile object for gradients."""
    from ..bump import BumpProfile

    U = Box(tuple(Arc(c, h) for c, h in zip(uc, uh)))
    V = Box(tuple(Arc(c, h) for c, h in zip(vc, vh)))
    prof = BumpProfile(U=U, V=V, epsilon=eps)
    vU = prof._box_value(x, U)
    vV = prof._box_value(x, V)
    return np.maximum(vU, vV), vU >= vV, prof


def _gate_pair(theta):
    from ..surgery import RadialProfile

    return RadialProfile(theta)


def _fiber_pair(delta):
    from ..surgery import FiberProfile

    return FiberProfile(delta)


def _pert_field(pts, pc, pw, pdir, pamp, pscale):
    """Displacement field: sum of localized bumps, shape like pts."""
    out = np.zeros_like(pts)
    for b in range(pc.shape[0]):
        rho2 = np.zeros(len(pts))
        for j in range(pts.shape[1]):
            lift = signed_lift(pts[:, j], pc[b, j])
            rho2 += lift * lift
        out += (pamp[b] * unit_bump(rho2 / (pw[b] * pw[b])))[:, None] * pdir[b]
    return out * pscale


def _pert_jac(pts, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    J = np.zeros((n, d, d))
    for b in range(pc.shape[0]):
        lifts = np.empty((n, d))
        rho2 = np.zeros(n)
        for j in range(d):
            lifts[:, j] = signed_lift(pts[:, j], pc[b, j])
            rho2 += lifts[:, j] ** 2
        md = pamp[b] * unit_bump_deriv(rho2 / (pw[b] * pw[b])) * 2.0 / (pw[b] * pw[b])
        J += md[:, None, None] * pdir[b][None, :, None] * lifts[:, None, :]
    return J * pscale


def _surgery_mask(pts, m1, s, r):
    rho2 = np.zeros(len(pts))
    for j in range(pts.shape[1]):
        d = np.abs(pts[:, j] - s[j]) % 1.0
        d = np.minimum(d, 1.0 - d)
        rho2 += d * d
    return rho2 < r * r


def step_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
               sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    out = np.empty_like(pts)
    x, y = pts[:, :m1], pts[:, m1]
    out[:, :m1] = reduce_coords(K * x)

    u, is_u, _ = _bump_parts(x, uc, uh, vc, vh, eps)
    disp = np.where(is_u, -beta * np.sin(2.0 * np.pi * y), dalpha)
    yb = np.where(
        (u == 1.0) & ~is_u, reduce_coords(y + alpha), reduce_coords(y + u * disp)
    )
    yb = np.where(u == 0.0, y, yb)

    if sur_on:
        inside = _surgery_mask(pts, m1, s, r)
        if inside.any():
            xs = pts[inside]
            arg = np.zeros(inside.sum())
            for j in range(m1):
                lift = off[j] + signed_lift(xs[:, j], off[j])
                arg += lift * lift
            w = off[m1] + signed_lift(xs[:, m1], off[m1])
            mod = w - _fiber_pair(delta).value(w) * _gate_pair(theta).value(arg)
            yb = yb.copy()
            yb[inside] = reduce_coords(mod)
    out[:, m1] = yb

    if pscale != 0.0:
        out = reduce_coords(out + _pert_field(pts, pc, pw, pdir, pamp, pscale))
    return out


def jac_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
              sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    n, d = pts.shape
    J = np.zeros((n, d, d))
    for j in range(m1):
        J[:, j, j] = K

    x, y = pts[:, :m1], pts[:, m1]
    u, is_u, prof = _bump_parts(x, uc, uh, vc, vh, eps)
    disp = np.where(is_u, -beta * np.sin(2.0 * np.pi * y), dalpha)
    ddisp = np.where(is_u, -2.0 * np.pi * beta * np.cos(2.0 * np.pi * y), 0.0)
    grad_u = prof.grad(x)
    J[:, m1, :m1] = grad_u * disp[:, None]
    J[:, m1, m1] = 1.0 + u * ddisp

    if sur_on:
        inside = _surgery_mask(pts, m1, s, r)
        if inside.any():
            xs = pts[inside]
            gate, fib = _gate_pair(theta), _fiber_pair(delta)
            lifts = np.empty((len(xs), m1))
            arg = np.zeros(len(xs))
            for j in range(m1):
                lifts[:, j] = off[j] + signed_lift(xs[:, j], off[j])
                arg += lifts[:, j] ** 2
            w = off[m1] + signed_lift(xs[:, m1], off[m1])
            J[inside, m1, :m1] = -(fib.value(w) * gate.deriv(arg))[:, None] * 2.0 * lifts
            J[inside, m1, m1] = 1.0 - fib.deriv(w) * gate.value(arg)

    if pscale != 0.0:
        J = J + _pert_jac(pts, pc, pw, pdir, pamp, pscale)
    return J


def _fiber_factor(pts, m1, uc, uh, vc, vh, eps, beta, alpha, dalpha,
                  sur_on, s, r, theta, delta, off):
    x, y = pts[:, :m1], pts[:, m1]
    u, is_u, _ = _bump_parts(x, uc, uh, vc, vh, eps)
    ddisp = np.where(is_u, -2.0 * np.pi * beta * np.cos(2.0 * np.pi * y), 0.0)
    factor = 1.0 + u * ddisp
    if sur_on:
        inside = _surgery_mask(pts, m1, s, r)
        if inside.any():
            xs = pts[inside]
            arg = np.zeros(inside.sum())
            for j in range(m1):
                lift = off[j] + signed_lift(xs[:, j], off[j])
                arg += lift * lift
            w = off[m1] + signed_lift(xs[:, m1], off[m1])
            factor = factor.copy()
            factor[inside] = 1.0 - _fiber_pair(delta).deriv(w) * _gate_pair(theta).value(arg)
    return factor


def det_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
              sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale):
    if pscale == 0.0:
        # df1/dy = 0 makes the Jacobian block-triangular
        factor = _fiber_factor(pts, m1, uc, uh, vc, vh, eps, beta, alpha, dalpha,
                               sur_on, s, r, theta, delta, off)
        return (K ** m1) * factor
    J = jac_batch(pts, m1, K, uc, uh, vc, vh, eps, beta, alpha, dalpha,
                  sur_on, s, r, theta, delta, off, pc, pw, pdir, pamp, pscale)
    d = pts.shape[1]
    if d == 2:
        return J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
    if d == 3:
        return (
            J[:, 0, 0] * (J[:, 1, 1] * J[:, 2, 2] - J[:, 1, 2] * J[:, 2, 1])
            - J[:, 0, 1] * (J[:, 1, 0] * J[:, 2, 2] - J[:, 1, 2] * J[:, 2, 0])
            + J[:, 0, 2] * (J[:, 1, 0] * J[:, 2, 1] - J[:, 1, 1] * J[:, 2, 0])
        )
    return np.linalg.det(J)


def graph_diameter(indptr, indices, n):
    """All-pairs reachability by boolean matrix powers (float32 matmul)."""
    A = np.zeros((n, n), dtype=np.float32)
    for i in range(n):
        A[i, indices[indptr[i]:indptr[i + 1]]] = 1.0
    dist = np.full((n, n), -1, dtype=np.int32)
    dist[A > 0.0] = 1
    np.fill_diagonal(dist, 0)
    cur = A
    step = 1
    while (dist < 0).any():
        if step > n:
            return -1
        cur = np.minimum(cur @ A, 1.0)
        step += 1
        newly = (cur > 0.0) & (dist < 0)
        if not newly.any():
            return -1
        dist[newly] = step
    return int(dist.max())
