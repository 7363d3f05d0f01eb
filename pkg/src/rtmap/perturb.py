"""Seeded C^1-small perturbation fields and the maps they displace.

A field is a sum of localized mollifier bumps displacing both
coordinates, rescaled so that its measured C^0 and C^1 norms (sampled
sup of values and of analytic Jacobian row sums, cross-checked against
finite differences in tests) do not exceed the requested magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bump import unit_bump, unit_bump_deriv
from .errors import ParameterError
from .geometry import reduce_coords, signed_lift

MEASURE_GRID = 128  # per-axis lattice used to measure field norms


@dataclass(frozen=True)
class PerturbationSpec:
    seed: int
    eta: float
    bump_count: int = 3
    dim: int = 2

    def __post_init__(self):
        if self.eta < 0.0:
            raise ParameterError("eta must be nonnegative")
        if self.eta >= 0.5:
            raise ParameterError("eta must stay below 0.5 to keep circle displacements well defined")
        if self.bump_count < 1:
            raise ParameterError("bump_count must be >= 1")


@dataclass(frozen=True)
class PerturbationField:
    centers: np.ndarray
    widths: np.ndarray
    dirs: np.ndarray
    amps: np.ndarray
    scale: float
    measured_c0: float = field(default=0.0, compare=False)
    measured_c1: float = field(default=0.0, compare=False)

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    def value(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.zeros_like(pts)
        for b in range(len(self.widths)):
            rho2 = np.zeros(len(pts))
            for j in range(self.dim):
                lift = signed_lift(pts[:, j], self.centers[b, j])
                rho2 += lift * lift
            out += (self.amps[b] * unit_bump(rho2 / self.widths[b] ** 2))[:, None] * self.dirs[b]
        return out * self.scale

    def jac(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        n, d = pts.shape
        J = np.zeros((n, d, d))
        for b in range(len(self.widths)):
            lifts = np.empty((n, d))
            rho2 = np.zeros(n)
            for j in range(d):
                lifts[:, j] = signed_lift(pts[:, j], self.centers[b, j])
                rho2 += lifts[:, j] ** 2
            md = self.amps[b] * unit_bump_deriv(rho2 / self.widths[b] ** 2) * 2.0 / self.widths[b] ** 2
            J += md[:, None, None] * self.dirs[b][None, :, None] * lifts[:, None, :]
        return J * self.scale


def _measure_norms(field_like: PerturbationField) -> tuple[float, float]:
    """Sampled sup of |field| and of the Jacobian operator norm (inf-norm)."""
    d = field_like.dim
    grid = MEASURE_GRID if d == 2 else 32
    axes = [(np.arange(grid) + 0.5) / grid] * d
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([m.ravel() for m in mesh])
    # refine around each bump center, where the extrema live
    locals_ = []
    for b in range(len(field_like.widths)):
        w = field_like.widths[b]
        offs = np.linspace(-w, w, 81)
        sub = np.meshgrid(*[field_like.centers[b, j] + offs for j in range(d)], indexing="ij")
        locals_.append(reduce_coords(np.column_stack([m.ravel() for m in sub])))
    pts = np.vstack([pts] + locals_)
    v = field_like.value(pts)
    c0 = float(np.sqrt((v**2).sum(axis=1)).max())
    J = field_like.jac(pts)
    c1 = float(np.abs(J).sum(axis=2).max(axis=1).max())
    return c0, c1


def make_perturbation(spec: PerturbationSpec) -> PerturbationField:
    """Draw a field from the seed and rescale it to measured norms <= eta."""
    rng = np.random.default_rng(spec.seed)
    d = spec.dim
    centers = rng.random((spec.bump_count, d))
    widths = 0.05 + 0.10 * rng.random(spec.bump_count)
    raw = rng.normal(size=(spec.bump_count, d))
    dirs = raw / np.sqrt((raw**2).sum(axis=1))[:, None]
    amps = 0.5 + 0.5 * rng.random(spec.bump_count)
    field_ = PerturbationField(centers=centers, widths=widths, dirs=dirs, amps=amps, scale=1.0)
    if spec.eta == 0.0:
        return PerturbationField(
            centers=centers, widths=widths, dirs=dirs, amps=amps, scale=0.0
        )
    c0, c1 = _measure_norms(field_)
    # 1% headroom keeps the true sup under eta despite sampling error
    scale = 0.99 * spec.eta / max(c0, c1)
    scaled = PerturbationField(
        centers=centers, widths=widths, dirs=dirs, amps=amps, scale=scale,
        measured_c0=c0 * scale, measured_c1=c1 * scale,
    )
    return scaled


@dataclass(frozen=True)
class PerturbedMap:
    """inner ⊕ field: displaces the image of `inner` by the field (mod 1)."""

    inner: object
    field: PerturbationField

    def __post_init__(self):
        if self.field.dim != self.inner.dim:
            raise ParameterError("perturbation dimension must match the map")

    @property
    def dim(self) -> int:
        return self.inner.dim

    @property
    def base(self):
        return self.inner.base

    @property
    def pair(self):
        return self.inner.pair

    def marked_fixed_candidates(self):
        return self.inner.marked_fixed_candidates()

    def _kparams(self):
        return self.inner._kparams()._replace(
            pc=self.field.centers,
            pw=self.field.widths,
            pdir=self.field.dirs,
            pamp=self.field.amps,
            pscale=self.field.scale,
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
