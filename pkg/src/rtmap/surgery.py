"""Local surgery that plants a robust critical set inside a small ball.

Two 1-d profiles drive the construction: a radial gate (a scaled
mollifier bump of the squared chart norm of the base coordinate, peak
value 2 at argument 1/16) and a fiber profile (a compactly supported C^2
quintic spline whose value is 0 and whose slopes are 1/2, -3, 3 at three
interior knots).  Inside the ball the last fiber coordinate becomes
w - fiber(w) * gate(|x|^2) in chart lifts; outside the ball the map is
untouched.  The Jacobian determinant picks up the factor
1 - fiber'(w) * gate(|x|^2), which straddles zero between the two knots.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bump import unit_bump, unit_bump_deriv
from .errors import ParameterError
from .geometry import Chart, dist_circle, reduce_coords, signed_lift, torus_point
from .skew import SkewMap

GATE_PEAK_ARG = 1.0 / 16.0
GATE_PEAK_VALUE = 2.0
FIBER_SLOPES = (0.0, 0.5, -3.0, 3.0, 0.0)
FIBER_BASE_KNOT = 0.25


@dataclass(frozen=True)
class RadialProfile:
    """Scaled mollifier: peak GATE_PEAK_VALUE at GATE_PEAK_ARG, support width 2*theta."""

    theta: float

    def __post_init__(self):
        if self.theta <= 0:
            raise ParameterError("theta must be positive")

    def value(self, t):
        z = (np.asarray(t, dtype=float) - GATE_PEAK_ARG) / self.theta
        out = GATE_PEAK_VALUE * unit_bump(z * z)
        return out if np.asarray(t).ndim else float(out)

    def deriv(self, t):
        z = (np.asarray(t, dtype=float) - GATE_PEAK_ARG) / self.theta
        out = GATE_PEAK_VALUE * unit_bump_deriv(z * z) * 2.0 * z / self.theta
        return out if np.asarray(t).ndim else float(out)

    @property
    def support(self) -> tuple[float, float]:
        return GATE_PEAK_ARG - self.theta, GATE_PEAK_ARG + self.theta


def _quintic_h1(tau):
    """Quintic Hermite basis: slope 1 at 0, value/curvature 0 at both ends."""
    return tau - 6.0 * tau**3 + 8.0 * tau**4 - 3.0 * tau**5


def _quintic_h4(tau):
    """Quintic Hermite basis: slope 1 at 1, value/curvature 0 at both ends."""
    return -4.0 * tau**3 + 7.0 * tau**4 - 3.0 * tau**5


def _quintic_h1_deriv(tau):
    return 1.0 - 18.0 * tau**2 + 32.0 * tau**3 - 15.0 * tau**4


def _quintic_h4_deriv(tau):
    return -12.0 * tau**2 + 28.0 * tau**3 - 15.0 * tau**4


@dataclass(frozen=True)
class FiberProfile:
    """C^2 piecewise-quintic profile with prescribed knot slopes.

    Knots sit at 1/4 + (i-1)*delta/4 for i = 0..4; the profile vanishes
    at every knot and outside [1/4 - delta/4, 1/4 + 3*delta/4], with
    slopes FIBER_SLOPES at the knots and zero curvature imposed there.
    """

    delta: float

    def __post_init__(self):
        if self.delta <= 0:
            raise ParameterError("delta must be positive")

    @property
    def knots(self) -> np.ndarray:
        return FIBER_BASE_KNOT + (np.arange(5) - 1) * self.delta / 4.0

    @property
    def support(self) -> tuple[float, float]:
        k = self.knots
        return float(k[0]), float(k[4])

    def _segment(self, w):
        k = self.knots
        L = self.delta / 4.0
        seg = np.minimum(((w - k[0]) / L).astype(int), 3)
        tau = (w - k[seg]) / L
        return seg, tau, L

    def value(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        k = self.knots
        inside = (w > k[0]) & (w < k[4])
        if inside.any():
            seg, tau, L = self._segment(w[inside])
            m = np.asarray(FIBER_SLOPES)
            out[inside] = L * (m[seg] * _quintic_h1(tau) + m[seg + 1] * _quintic_h4(tau))
        return out if out.ndim else float(out)

    def deriv(self, w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        k = self.knots
        inside = (w > k[0]) & (w < k[4])
        if inside.any():
            seg, tau, _ = self._segment(w[inside])
            m = np.asarray(FIBER_SLOPES)
            out[inside] = m[seg] * _quintic_h1_deriv(tau) + m[seg + 1] * _quintic_h4_deriv(tau)
        return out if out.ndim else float(out)

    def max_abs(self) -> float:
        lo, hi = self.support
        return float(np.max(np.abs(self.value(np.linspace(lo, hi, 4001)))))


@dataclass(frozen=True)
class SingularMap:
    """The surgered map: equals the skew product outside B(s, r)."""

    skew: SkewMap
    chart: Chart
    s: np.ndarray
    r: float
    gate: RadialProfile
    fiber: FiberProfile

    def __post_init__(self):
        object.__setattr__(self, "s", torus_point(*np.atleast_1d(self.s)))
        self._validate()

    # -- parameter checks ------------------------------------------------
    def _validate(self):
        theta, delta, r = self.gate.theta, self.fiber.delta, self.r
        if not 0.0 < delta < 2.0 * theta:
            raise ParameterError(f"requires 0 < delta < 2*theta, got delta={delta}, theta={theta}")
        if not 2.0 * theta < r:
            raise ParameterError(f"requires 2*theta < r, got theta={theta}, r={r}")
        if theta >= GATE_PEAK_ARG:
            raise ParameterError("theta must stay below 1/16 so the gate support avoids |x| = 0")
        d = self.dim
        if len(self.s) != d:
            raise ParameterError(f"s must have {d} coordinates")
        if len(self.chart.base_offsets) != d:
            raise ParameterError("chart dimension must match the map dimension")
        # ball must avoid the blending region ...
        base = self.skew.base
        s1 = self.s[: base.m1]
        for box in (base.U.fatten(base.epsilon), base.V.fatten(base.epsilon)):
            gap = max(
                float(np.max(dist_circle(s1, box.centers()) - box.half_widths())), 0.0
            )
            if gap <= r:
                raise ParameterError(
                    "ball around s must avoid the fattened blending boxes: "
                    f"B(s, r={r}) meets a box (base gap {gap:.4f})"
                )
        # chart normalization: the fattened blending boxes must lift into
        # B(0, 1/10) (their open sup may equal 1/10, hence the slack)
        off = np.array(self.chart.base_offsets)
        for box in (base.U.fatten(base.epsilon), base.V.fatten(base.epsilon)):
            for j, arc in enumerate(box.arcs):
                for end in arc.interval():
                    lift = float(signed_lift(end, off[j]))
                    if abs(lift) > 0.1 + 1e-12:
                        raise ParameterError(
                            "blending region must lift into B(0, 1/10); "
                            f"coordinate {j} reaches {lift}"
                        )
        # ... and |mu1(s1)| - r must clear the 1/10 chart ball around p
        mu_s = self.chart.forward(self.s)
        mu1_norm = float(np.sqrt(np.sum((mu_s[: base.m1] - off[: base.m1]) ** 2)))
        if mu1_norm - r <= 0.1:
            raise ParameterError(
                f"requires |mu1(s1)| - r > 1/10, got |mu1(s1)|={mu1_norm}, r={r}"
            )
        # the modification must die out before reaching the ball's boundary
        lo, hi = self.gate.support
        if lo <= 0.0:
            raise ParameterError("gate support must stay in positive squared radius")
        x_extent = max(mu1_norm - np.sqrt(lo), np.sqrt(hi) - mu1_norm)
        y_extent = 3.0 * self.fiber.delta / 4.0
        if np.hypot(x_extent, y_extent) >= r:
            raise ParameterError(
                "surgery support must sit strictly inside B(s, r): "
                f"extent {np.hypot(x_extent, y_extent):.4f} vs r={r}"
            )
        # modified fiber values must stay inside the chart window
        room = self.chart.window_half_width - abs(
            signed_lift(self.s[-1], off[-1])
        ) - y_extent
        if self.fiber.max_abs() * GATE_PEAK_VALUE >= room:
            raise ParameterError("fiber displacement could escape the chart window")

    # -- derived points --------------------------------------------------
    @property
    def dim(self) -> int:
        return self.skew.dim

    @property
    def q1(self) -> np.ndarray:
        """Marked point with fiber chart value 1/4 + delta/4 over s1."""
        pt = self.s.copy()
        pt[-1] = reduce_coords(FIBER_BASE_KNOT + self.fiber.delta / 4.0)
        return pt

    @property
    def q2(self) -> np.ndarray:
        """Marked point with fiber chart value 1/4 + delta/2 over s1."""
        pt = self.s.copy()
        pt[-1] = reduce_coords(FIBER_BASE_KNOT + self.fiber.delta / 2.0)
        return pt

    @property
    def base(self):
        return self.skew.base

    @property
    def pair(self):
        return self.skew.pair

    def marked_fixed_candidates(self):
        return self.skew.marked_fixed_candidates()

    # -- evaluation (routed through the kernel backend) -------------------
    def _kparams(self):
        kp = self.skew._kparams()
        return kp._replace(
            sur_on=True,
            s=self.s,
            r=self.r,
            theta=self.gate.theta,
            delta=self.fiber.delta,
            off=np.array(self.chart.base_offsets),
        )

    def eval_batch(self, pts: np.ndarray) -> np.ndarray:
        from . import kernels

        return kernels.step_batch(self._kparams(), np.atleast_2d(np.asarray(pts, float)))

    def eval(self, pt) -> np.ndarray:
        return self.eval_batch(np.atleast_2d(np.asarray(pt, float)))[0]

    def jacobian_batch(self, pts: np.ndarray) -> np.ndarray:
        from . import kernels

        return kernels.jac_batch(self._kparams(), np.atleast_2d(np.asarray(pts, float)))

    def jacobian(self, pt) -> np.ndarray:
        return self.jacobian_batch(np.atleast_2d(np.asarray(pt, float)))[0]

    def jacobian_det_batch(self, pts: np.ndarray) -> np.ndarray:
        from . import kernels

        return kernels.det_batch(self._kparams(), np.atleast_2d(np.asarray(pts, float)))

    def jacobian_det(self, pt) -> float:
        return float(self.jacobian_det_batch(np.atleast_2d(np.asarray(pt, float)))[0])


@dataclass(frozen=True)
class CriticalTrace:
    """Located zeros of the Jacobian determinant inside the scanned ball."""

    points: tuple[tuple[float, ...], ...] = field(repr=False)
    resolution: float
    residuals: tuple[float, ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.points)


def critical_trace(
    map_like,
    resolution: float,
    center=None,
    radius: float | None = None,
    residual_rel: float = 1e-9,
) -> CriticalTrace:
    """Grid scan of a ball for sign changes of det(DA), refined by bisection.

    Works on any 2-d map exposing jacobian_det_batch; for a SingularMap
    the ball defaults to B(s, r).  Residual target is residual_rel
    relative to det(DF).
    """
    if resolution <= 0:
        raise ParameterError("resolution must be positive")
    if center is None:
        center = map_like.s
    if radius is None:
        radius = map_like.r
    center = np.atleast_1d(np.asarray(center, dtype=float))
    if len(center) != 2:
        raise ParameterError("critical_trace scans 2-d maps only")
    det_scale = map_like.base.det
    tol = residual_rel * det_scale

    n = int(np.ceil(2.0 * radius / resolution)) + 1
    lin = np.linspace(-radius, radius, n)
    X, Y = np.meshgrid(center[0] + lin, center[1] + lin, indexing="ij")
    pts = reduce_coords(np.column_stack([X.ravel(), Y.ravel()]))
    dets = map_like.jacobian_det_batch(pts).reshape(n, n)
    inside = ((X - center[0]) ** 2 + (Y - center[1]) ** 2 < radius**2).reshape(n, n)

    def bisect(p, q):
        fp = map_like.jacobian_det(reduce_coords(p))
        for _ in range(200):
            mid = 0.5 * (p + q)
            fm = map_like.jacobian_det(reduce_coords(mid))
            if abs(fm) <= tol:
                return reduce_coords(mid), abs(fm)
            if (fp < 0) != (fm < 0):
                q = mid
            else:
                p, fp = mid, fm
        return None

    found, residuals = [], []
    sign = np.signbit(dets)
    for axis in (0, 1):
        a = (slice(None, -1), slice(None)) if axis == 0 else (slice(None), slice(None, -1))
        b = (slice(1, None), slice(None)) if axis == 0 else (slice(None), slice(1, None))
        flip = (sign[a] != sign[b]) & inside[a] & inside[b]
        ii, jj = np.nonzero(flip)
        for i, j in zip(ii, jj):
            if axis == 0:
                p = np.array([center[0] + lin[i], center[1] + lin[j]])
                q = np.array([center[0] + lin[i + 1], center[1] + lin[j]])
            else:
                p = np.array([center[0] + lin[i], center[1] + lin[j]])
                q = np.array([center[0] + lin[i], center[1] + lin[j + 1]])
            hit = bisect(p, q)
            if hit is not None:
                found.append(tuple(hit[0]))
                residuals.append(hit[1])
    return CriticalTrace(points=tuple(found), resolution=resolution, residuals=tuple(residuals))
