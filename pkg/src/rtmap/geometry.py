"""Flat-torus geometry: reduced coordinates, circle metric, arcs, boxes, charts.

Points on T^d are plain float arrays with every coordinate reduced to
[0, 1).  Regions are products of open arcs.  All objects are immutable
after construction and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChartDomainError, ParameterError


def reduce_coords(x):
    """Reduce coordinates to the canonical representative in [0, 1).

    Ties at 1.0 (which `% 1.0` can produce for tiny negative inputs)
    reduce to 0.0, so the reduction is idempotent.
    """
    r = np.asarray(x, dtype=float) % 1.0
    if r.ndim == 0:
        return 0.0 if r >= 1.0 else float(r)
    r[r >= 1.0] = 0.0
    return r


def torus_point(*coords) -> np.ndarray:
    """Build a reduced point on T^d from raw coordinates."""
    return np.atleast_1d(reduce_coords(np.asarray(coords, dtype=float)))


def dist_circle(a, b):
    """Circle distance min_k |a - b + k|, in [0, 1/2]."""
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % 1.0
    return np.minimum(d, 1.0 - d)


def signed_lift(a, b):
    """Representative of a - b in (-1/2, 1/2]."""
    d = (np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % 1.0
    return np.where(d > 0.5, d - 1.0, d)


def torus_dist(p, q) -> float:
    """Product (euclidean) distance between two points of T^d."""
    return float(np.sqrt(np.sum(dist_circle(p, q) ** 2)))


@dataclass(frozen=True)
class Arc:
    """Open arc on the circle: {y : dist_circle(y, center) < half_width}.

    half_width may equal 0.5, representing the circle minus the antipode
    of the center (useful as a "full circle" target).
    """

    center: float
    half_width: float

    def __post_init__(self):
        object.__setattr__(self, "center", float(reduce_coords(self.center)))
        object.__setattr__(self, "half_width", float(self.half_width))
        if not 0.0 < self.half_width <= 0.5:
            raise ParameterError(f"arc half_width must lie in (0, 1/2], got {self.half_width}")

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    def interval(self) -> tuple[float, float]:
        """Open lift (lo, hi) with hi - lo = length; lo may be negative."""
        return self.center - self.half_width, self.center + self.half_width

    def contains(self, y):
        return dist_circle(y, self.center) < self.half_width

    def contains_arc(self, other: "Arc") -> bool:
        """Whether the closure of `other` sits inside this open arc."""
        return bool(
            dist_circle(other.center, self.center) + other.half_width < self.half_width
        )

    def fatten(self, pad: float) -> "Arc":
        return Arc(self.center, self.half_width + pad)

    def sample(self, n: int, rng=None) -> np.ndarray:
        """n points of the arc: uniform with `rng`, evenly spaced without."""
        lo, hi = self.interval()
        if rng is None:
            ys = np.linspace(lo, hi, n + 2)[1:-1]
        else:
            ys = lo + (hi - lo) * rng.random(n)
        return reduce_coords(ys)


def arcs_overlap(a: Arc, b: Arc) -> bool:
    """Whether two open arcs intersect."""
    if a.half_width + b.half_width >= 0.5:
        return True  # combined lengths exceed the circle's diameter bound
    return bool(dist_circle(a.center, b.center) < a.half_width + b.half_width)


def arc_intersection(a: Arc, b: Arc) -> list[Arc]:
    """Connected components of a ∩ b, as exact arcs (computed on lifts)."""
    a_lo, a_hi = a.interval()
    b_lo, b_hi = b.interval()
    pieces = []
    k0 = int(np.floor(a_lo - b_lo)) - 1
    for k in range(k0, k0 + 4):
        lo = max(a_lo, b_lo + k)
        hi = min(a_hi, b_hi + k)
        if hi - lo > 0.0:
            pieces.append((lo, hi))
    return [Arc(reduce_coords(0.5 * (lo + hi)), 0.5 * (hi - lo)) for lo, hi in pieces]


@dataclass(frozen=True)
class Box:
    """Product of one open arc per coordinate."""

    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if not self.arcs:
            raise ParameterError("box needs at least one arc")

    @property
    def dim(self) -> int:
        return len(self.arcs)

    @property
    def volume(self) -> float:
        return float(np.prod([a.length for a in self.arcs]))

    def centers(self) -> np.ndarray:
        return np.array([a.center for a in self.arcs])

    def half_widths(self) -> np.ndarray:
        return np.array([a.half_width for a in self.arcs])

    def contains(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        ok = np.ones(len(pts), dtype=bool)
        for j, a in enumerate(self.arcs):
            ok &= a.contains(pts[:, j])
        return ok if ok.size > 1 else bool(ok[0])

    def fatten(self, pad: float) -> "Box":
        return Box(tuple(a.fatten(pad) for a in self.arcs))

    def sample(self, n: int, rng) -> np.ndarray:
        return np.column_stack([a.sample(n, rng) for a in self.arcs])


def box_from_arc(center: float, half_width: float) -> Box:
    return Box((Arc(center, half_width),))


def box_intersects(a: Box, b: Box) -> bool:
    """Whether two boxes intersect (coordinatewise arc overlap)."""
    if a.dim != b.dim:
        raise ParameterError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return all(arcs_overlap(x, y) for x, y in zip(a.arcs, b.arcs))


@dataclass(frozen=True)
class Chart:
    """Identity-on-window chart: each coordinate maps to its unique lift
    in (offset - 1/2, offset + 1/2), restricted to |lift - offset| < window.

    The coordinate derivative is 1 everywhere on the window, so chart
    factors drop out of every Jacobian computed through it.
    """

    base_offsets: tuple[float, ...]
    window_half_width: float = 0.45

    def __post_init__(self):
        object.__setattr__(self, "base_offsets", tuple(float(o) for o in self.base_offsets))
        if not 0.0 < self.window_half_width < 0.5:
            raise ParameterError("chart window half-width must lie in (0, 1/2)")

    @property
    def dim(self) -> int:
        return len(self.base_offsets)

    def forward(self, pt) -> np.ndarray:
        """Lift vector of a point; raises if any coordinate leaves the window."""
        pt = np.atleast_1d(np.asarray(pt, dtype=float))
        off = np.array(self.base_offsets)
        lift = off + signed_lift(pt, off)
        if np.any(np.abs(lift - off) >= self.window_half_width):
            raise ChartDomainError(f"point {pt} outside chart window")
        return lift

    def backward(self, vec) -> np.ndarray:
        """Inverse of forward: reduce the lift back to the torus."""
        vec = np.atleast_1d(np.asarray(vec, dtype=float))
        off = np.array(self.base_offsets)
        if np.any(np.abs(vec - off) >= self.window_half_width):
            raise ChartDomainError(f"lift {vec} outside chart image")
        return reduce_coords(vec)
