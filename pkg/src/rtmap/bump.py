"""Smooth cutoffs: mollifier primitives and the blending bump u on T^m1.

u equals 1 on U ∪ V, 0 outside the epsilon-fattened boxes, and ramps in
between through the standard C-infinity step s(t) = e(t)/(e(t)+e(1-t)),
e(t) = exp(-1/t).  Per-coordinate ramps combine multiplicatively inside
a box and the two boxes combine by max (their supports are disjoint).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Box, dist_circle, signed_lift


def exp_step(t):
    """C-infinity monotone step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    lo = t <= 0.0
    hi = t >= 1.0
    mid = ~(lo | hi)
    out[lo] = 0.0
    out[hi] = 1.0
    tm = t[mid]
    a = np.exp(-1.0 / tm)
    b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = a / (a + b)
    return out if out.ndim else float(out)


def exp_step_deriv(t):
    """Derivative of exp_step; vanishes to all orders at 0 and 1."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    a = np.exp(-1.0 / tm)
    b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = (a * b * (1.0 / tm**2 + 1.0 / (1.0 - tm) ** 2)) / (a + b) ** 2
    return out if out.ndim else float(out)


def unit_bump(t):
    """exp(1 - 1/(1-t)) on t in [0, 1), 0 beyond; peak value 1 at t = 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = t < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - t[m]))
    return out if out.ndim else float(out)


def unit_bump_deriv(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = t < 1.0
    out[m] = -np.exp(1.0 - 1.0 / (1.0 - t[m])) / (1.0 - t[m]) ** 2
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class BumpProfile:
    """The cutoff u built from blending boxes U, V and margin epsilon."""

    U: Box
    V: Box
    epsilon: float

    def _box_factors(self, x: np.ndarray, box: Box) -> np.ndarray:
        """Per-coordinate ramp factors (n, m1) for one box."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        t = np.empty_like(x)
        for j, arc in enumerate(box.arcs):
            t[:, j] = (dist_circle(x[:, j], arc.center) - arc.half_width) / self.epsilon
        return 1.0 - exp_step(t)

    def _box_value(self, x, box: Box) -> np.ndarray:
        return np.prod(self._box_factors(x, box), axis=1)

    def value(self, x):
        """u(x) in [0, 1]; exactly 1 on U ∪ V and 0 outside the fattened boxes."""
        x2 = np.atleast_2d(np.asarray(x, dtype=float))
        v = np.maximum(self._box_value(x2, self.U), self._box_value(x2, self.V))
        return v if np.asarray(x).ndim > 1 else float(v[0])

    def on_first_box(self, x):
        """True where the U-side branch is the active one (u from U >= u from V)."""
        x2 = np.atleast_2d(np.asarray(x, dtype=float))
        m = self._box_value(x2, self.U) >= self._box_value(x2, self.V)
        return m if np.asarray(x).ndim > 1 else bool(m[0])

    def grad(self, x):
        """Analytic gradient of u, zero on U ∪ V and outside the supports."""
        x2 = np.atleast_2d(np.asarray(x, dtype=float))
        n, m1 = x2.shape
        vU = self._box_value(x2, self.U)
        vV = self._box_value(x2, self.V)
        use_U = vU >= vV
        g = np.zeros((n, m1))
        for box, mask in ((self.U, use_U), (self.V, ~use_U)):
            if not mask.any():
                continue
            xs = x2[mask]
            factors = self._box_factors(xs, box)
            for j, arc in enumerate(box.arcs):
                t_j = (dist_circle(xs[:, j], arc.center) - arc.half_width) / self.epsilon
                ds = -exp_step_deriv(t_j) / self.epsilon
                sign = np.sign(signed_lift(xs[:, j], arc.center))
                others = np.prod(np.delete(factors, j, axis=1), axis=1) if m1 > 1 else 1.0
                g[mask, j] = ds * sign * others
        return g if np.asarray(x).ndim > 1 else g[0]
