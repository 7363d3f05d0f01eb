"""Linear expanding base map on T^m1 and its blending preimage structure.

The base map is x -> degree^N * x (mod 1) in every coordinate, the N-th
power of the degree map chosen so that both blending boxes U and V map
onto the whole base torus.  For m1 = 1 preimages of arcs are exact
(lift-and-slice of a linear map), which makes the nested Cantor
refinement below exact as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, PrecisionError
from .geometry import Arc, Box, arc_intersection, box_intersects, reduce_coords

MIN_ARC_WIDTH = 1e-15  # refinement below this is float noise


def smallest_covering_power(degree: int, boxes) -> int:
    """Smallest N with degree^N * length(arc) >= 1 for every arc involved.

    Exact for the linear map: the lifted image of an arc is an interval
    of length degree^N * length, which covers the circle iff >= 1.
    """
    n = 1
    while n < 64:
        if all(degree**n * a.length >= 1.0 for b in boxes for a in b.arcs):
            return n
        n += 1
    raise ParameterError("no covering power below 64; arcs too thin")


@dataclass(frozen=True)
class ExpandingBase:
    """F = (x -> degree*x)^N with blending boxes U, V and margin epsilon."""

    degree: int
    power: int
    U: Box
    V: Box
    epsilon: float

    def __post_init__(self):
        if self.degree < 2:
            raise ParameterError(f"degree must be >= 2, got {self.degree}")
        if self.U.dim != self.V.dim:
            raise ParameterError("U and V must share a dimension")
        if self.epsilon <= 0:
            raise ParameterError("epsilon must be positive")
        if box_intersects(self.U.fatten(self.epsilon), self.V.fatten(self.epsilon)):
            raise ParameterError("fattened boxes must be disjoint: U_eps ∩ V_eps = ∅")

    @property
    def m1(self) -> int:
        return self.U.dim

    @property
    def expansion(self) -> float:
        """Per-step derivative degree^N (the same in every coordinate)."""
        return float(self.degree**self.power)

    @property
    def det(self) -> float:
        """det(DF) = degree^(N*m1), constant and positive."""
        return float(self.degree ** (self.power * self.m1))

    @property
    def fixed_point(self) -> np.ndarray:
        return np.zeros(self.m1)

    def eval_batch(self, x: np.ndarray) -> np.ndarray:
        """F on a batch of base points, shape (n, m1) or (m1,)."""
        return reduce_coords(self.expansion * np.asarray(x, dtype=float))

    def covers_circle(self, box: Box) -> bool:
        """Interval-arithmetic certificate that F(box) is the whole torus."""
        return all(self.expansion * a.length >= 1.0 for a in box.arcs)

    def sampled_covering(self, box: Box, grid: int = 2048, oversample: int = 8) -> bool:
        """Brute-force certificate: every grid cell receives an image of box.

        Checks each coordinate independently (the map is diagonal).
        """
        for a in box.arcs:
            n = max(grid * oversample, int(self.expansion * a.length * grid * 2))
            img = reduce_coords(self.expansion * a.sample(n))
            cells = np.unique(np.minimum((img * grid).astype(int), grid - 1))
            if cells.size != grid:
                return False
        return True


def build_expanding(
    degree: int, U: Box, V: Box, epsilon: float, power_override: int | None = None
) -> ExpandingBase:
    """Assemble the base map with the smallest power covering from U and V."""
    n = smallest_covering_power(degree, (U, V))
    if power_override is not None:
        if power_override < n:
            raise ParameterError(
                f"power_override={power_override} below smallest covering power {n}"
            )
        n = power_override
    base = ExpandingBase(degree=degree, power=n, U=U, V=V, epsilon=epsilon)
    assert base.covers_circle(U) and base.covers_circle(V)
    return base


def preimage_components(base: ExpandingBase, target, within) -> list[Box]:
    """Connected components of F^{-1}(target) ∩ within, exact arcs (m1 = 1).

    The K = degree^N branches of the linear map pull the target arc back
    to K arcs of 1/K-th the width; each is intersected with `within` on
    the circle.  Components of zero (sub-float) width are dropped.
    """
    if base.m1 != 1:
        raise ParameterError("preimage_components requires m1 = 1")
    t_arc = target.arcs[0] if isinstance(target, Box) else target
    w_arc = within.arcs[0] if isinstance(within, Box) else within
    K = base.expansion
    t_lo, t_hi = t_arc.interval()
    out = []
    for j in range(int(K)):
        lo = (t_lo + j) / K
        hi = (t_hi + j) / K
        if hi - lo <= MIN_ARC_WIDTH:
            continue
        branch = Arc(reduce_coords(0.5 * (lo + hi)), 0.5 * (hi - lo))
        for piece in arc_intersection(branch, w_arc):
            if piece.half_width > MIN_ARC_WIDTH:
                out.append(Box((piece,)))
    return out


@dataclass(frozen=True)
class CantorApproximation:
    """Depth-n stage of the blending Cantor set C = ∩ F^{-n}(U ∪ V)."""

    depth: int
    components: tuple[Box, ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def max_width(self) -> float:
        return max(b.arcs[0].length for b in self.components)


def cantor_components(base: ExpandingBase, depth: int) -> CantorApproximation:
    """Refine U ∪ V through `depth` exact preimage steps (m1 = 1).

    Depth 0 is the two boxes themselves; each further level keeps the
    parts of U ∪ V that stay inside the previous level for one more
    application of F.  Widths contract by at least degree^N per level.
    """
    if depth < 0:
        raise ParameterError("depth must be >= 0")
    if base.m1 != 1:
        raise ParameterError("cantor_components requires m1 = 1")
    level = [base.U, base.V]
    for _ in range(depth):
        level = [
            piece
            for comp in level
            for within in (base.U, base.V)
            for piece in preimage_components(base, comp, within)
        ]
        if not level:
            raise PrecisionError("refinement emptied out; widths below float resolution")
        if max(b.arcs[0].half_width for b in level) < MIN_ARC_WIDTH:
            raise PrecisionError("component widths underflow below 1e-15")
    return CantorApproximation(depth=depth, components=tuple(level))
