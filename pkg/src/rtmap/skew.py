"""The blended skew product on T^m1 x T^1.

The base coordinate always moves by the expanding map F.  The fiber
applies g1 over the U-side, g2 over the V-side, and the identity far
from both, glued by the bump u through canonical lifted displacements:
g1 contributes -beta*sin(2*pi*y) (already a lift of magnitude < 1/2),
g2 contributes the representative of alpha in (-1/2, 1/2].  Where
u = 1 the map restricts exactly to the branch map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bump import BumpProfile
from .errors import ParameterError
from .expanding import ExpandingBase
from .geometry import reduce_coords
from .ifs import IfsPair


@dataclass(frozen=True)
class SkewMap:
    base: ExpandingBase
    pair: IfsPair
    bump: BumpProfile

    def __post_init__(self):
        if self.bump.U is not self.base.U and self.bump.U != self.base.U:
            raise ParameterError("bump must be built over the base map's boxes")

    @property
    def dim(self) -> int:
        return self.base.m1 + 1

    def marked_fixed_candidates(self) -> list[np.ndarray]:
        p = self.base.fixed_point
        return [
            np.append(p, self.pair.a1),
            np.append(p, self.pair.r1),
        ]

    def _kparams(self):
        from .kernels import KernelParams

        m1 = self.base.m1
        d = m1 + 1
        return KernelParams(
            m1=m1,
            K=self.base.expansion,
            uc=self.base.U.centers(),
            uh=self.base.U.half_widths(),
            vc=self.base.V.centers(),
            vh=self.base.V.half_widths(),
            eps=self.base.epsilon,
            beta=self.pair.beta,
            alpha=self.pair.alpha,
            dalpha=self.pair.rotation_rep,
            sur_on=False,
            s=np.zeros(d),
            r=0.0,
            theta=1.0,
            delta=1.0,
            off=np.zeros(d),
            pc=np.zeros((0, d)),
            pw=np.zeros(0),
            pdir=np.zeros((0, d)),
            pamp=np.zeros(0),
            pscale=0.0,
        )

    # -- evaluation --------------------------------------------------------
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

    def branch_eval(self, pt) -> np.ndarray:
        """The unblended branch map: g1 over fattened U, g2 over fattened V.

        Raises outside both fattened boxes, where no branch is declared.
        """
        pt = np.atleast_1d(np.asarray(pt, dtype=float))
        x, y = pt[: self.base.m1], pt[self.base.m1]
        fx = self.base.eval_batch(x)
        if self.base.U.fatten(self.base.epsilon).contains(x[None, :]):
            return np.append(fx, self.pair.g1(y))
        if self.base.V.fatten(self.base.epsilon).contains(x[None, :]):
            return np.append(fx, self.pair.g2(y))
        raise ParameterError(f"branch map undefined at base point {x}")


def iterate_batch(map_like, pts: np.ndarray, steps: int) -> np.ndarray:
    """Forward-iterate a batch of points `steps` times."""
    cur = np.atleast_2d(np.asarray(pts, dtype=float))
    for _ in range(steps):
        cur = map_like.eval_batch(cur)
    return cur


def orbit(map_like, pt, steps: int) -> np.ndarray:
    """Orbit of a single point, shape (steps + 1, d), starting at pt."""
    d = len(np.atleast_1d(pt))
    out = np.empty((steps + 1, d))
    out[0] = reduce_coords(np.atleast_1d(np.asarray(pt, dtype=float)))
    for t in range(steps):
        out[t + 1] = map_like.eval_batch(out[t][None, :])[0]
    return out
