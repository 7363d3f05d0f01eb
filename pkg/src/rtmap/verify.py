"""Constructive verifiers for the dynamical claims.

Each verifier returns a structured report with evidence (witness points,
coverage fractions, residuals) rather than a bare boolean.  Negative
results at finite sampling are reports, not exceptions: absence of a
reachability edge only means "not found at this sampling".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ParameterError, SearchExhaustedError
from .geometry import (
    Arc,
    Box,
    arc_intersection,
    dist_circle,
    reduce_coords,
    signed_lift,
    torus_dist,
)
from .ifs import branch_to_target
from .perturb import PerturbationSpec, PerturbedMap, make_perturbation
from .surgery import FIBER_BASE_KNOT, SingularMap


# ---------------------------------------------------------------------------
# finite differences (shared numerical hygiene helper)

def fd_jacobian(map_like, pts: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central finite-difference Jacobians on the torus, shape (n, d, d)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    n, d = pts.shape
    J = np.empty((n, d, d))
    for c in range(d):
        shift = np.zeros(d)
        shift[c] = h
        hi = map_like.eval_batch(reduce_coords(pts + shift))
        lo = map_like.eval_batch(reduce_coords(pts - shift))
        J[:, :, c] = signed_lift(hi, lo) / (2.0 * h)
    return J


# ---------------------------------------------------------------------------
# fixed points

@dataclass(frozen=True)
class FixedPointReport:
    point: tuple[float, ...]
    eigenvalues: tuple[complex, ...]
    classification: str
    residual: float
    grid_detected: bool = False


def _classify(eigenvalues, tol: float) -> str:
    mags = np.abs(eigenvalues)
    if np.any(np.abs(mags - 1.0) <= tol):
        return "nonhyperbolic"
    if np.all(mags > 1.0):
        return "source"
    if np.all(mags < 1.0):
        return "sink"
    return "saddle"


def classify_fixed_points(
    map_like, candidates=None, grid_k: int = 0, tol: float = 1e-9
) -> list[FixedPointReport]:
    """Classify the marked candidates, plus any grid-detected fixed points."""
    if candidates is None:
        candidates = map_like.marked_fixed_candidates()
    reports = []
    for pt in candidates:
        pt = np.atleast_1d(np.asarray(pt, dtype=float))
        img = map_like.eval(pt)
        eig = np.linalg.eigvals(map_like.jacobian(pt))
        reports.append(
            FixedPointReport(
                point=tuple(pt),
                eigenvalues=tuple(eig),
                classification=_classify(eig, tol),
                residual=torus_dist(img, pt),
            )
        )
    if grid_k > 0:
        d = map_like.dim
        axes = [(np.arange(grid_k) + 0.5) / grid_k] * d
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.column_stack([m.ravel() for m in mesh])
        imgs = map_like.eval_batch(pts)
        res = np.sqrt(np.sum(dist_circle(imgs, pts) ** 2, axis=1))
        known = np.array([rep.point for rep in reports])
        for i in np.nonzero(res < 0.25 / grid_k)[0]:
            pt = pts[i]
            pt = _refine_fixed_point(map_like, pt)
            img = map_like.eval(pt)
            residual = torus_dist(img, pt)
            if residual > 0.25 / grid_k:
                continue
            if known.size and np.min(np.sqrt(np.sum(dist_circle(known, pt) ** 2, axis=1))) < 0.5 / grid_k:
                continue
            known = np.vstack([known, pt]) if known.size else pt[None, :]
            eig = np.linalg.eigvals(map_like.jacobian(pt))
            reports.append(
                FixedPointReport(
                    point=tuple(pt),
                    eigenvalues=tuple(eig),
                    classification=_classify(eig, tol),
                    residual=residual,
                    grid_detected=True,
                )
            )
    return reports


def _refine_fixed_point(map_like, pt, steps: int = 12):
    """A few Newton steps on the lifted displacement; falls back to the input."""
    cur = np.atleast_1d(np.asarray(pt, dtype=float))
    eye = np.eye(len(cur))
    for _ in range(steps):
        disp = signed_lift(map_like.eval(cur), cur)
        J = map_like.jacobian(cur) - eye
        try:
            delta = np.linalg.solve(J, disp)
        except np.linalg.LinAlgError:
            return cur
        if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 0.5:
            return cur
        cur = reduce_coords(cur - delta)
        if np.max(np.abs(delta)) < 1e-14:
            break
    return cur


# ---------------------------------------------------------------------------
# unstable-set coverage (grid reachability from U x {a1})

@dataclass(frozen=True)
class CoverageReport:
    fractions: tuple[float, ...]
    grid_k: int
    final_fraction: float
    hits: np.ndarray = field(repr=False, compare=False)


def unstable_coverage(
    map_like,
    grid_k: int = 100,
    max_iters: int = 40,
    seed: int = 0,
    n_seed: int = 20000,
    samples_per_cell: int = 64,
) -> CoverageReport:
    """Grow the covered-cell set from a dense sample of U x {a1}.

    Mirrors the unstable-set iteration at grid resolution: every covered
    cell is re-sampled and pushed forward each iterate, so the covered
    set is monotone by construction and the per-iterate fraction is the
    grid surrogate for the k-th forward image.
    """
    if grid_k < 2:
        raise ParameterError("grid_k must be >= 2")
    if map_like.base.m1 != 1:
        raise ParameterError("coverage grid is implemented for m1 = 1")
    rng = np.random.default_rng(seed)
    covered = np.zeros((grid_k, grid_k), dtype=bool)
    hits = np.zeros((grid_k, grid_k), dtype=np.int64)

    xs = map_like.base.U.arcs[0].sample(n_seed, rng)
    pts = np.column_stack([xs, np.full(n_seed, map_like.pair.a1)])
    fractions = []
    for _ in range(max_iters):
        img = map_like.eval_batch(pts)
        ci = np.minimum((img[:, 0] * grid_k).astype(int), grid_k - 1)
        cj = np.minimum((img[:, 1] * grid_k).astype(int), grid_k - 1)
        covered[ci, cj] = True
        np.add.at(hits, (ci, cj), 1)
        fractions.append(float(covered.mean()))
        ii, jj = np.nonzero(covered)
        m = ii.size
        sx = (np.repeat(ii, samples_per_cell) + rng.random(m * samples_per_cell)) / grid_k
        sy = (np.repeat(jj, samples_per_cell) + rng.random(m * samples_per_cell)) / grid_k
        pts = np.column_stack([sx, sy])
    return CoverageReport(
        fractions=tuple(fractions),
        grid_k=grid_k,
        final_fraction=fractions[-1],
        hits=hits,
    )


# ---------------------------------------------------------------------------
# stable witness (exact construction mirroring the density proof)

@dataclass(frozen=True)
class StableWitness:
    point: tuple[float, ...]
    base_exact: Fraction
    m: int
    n: int
    landing_error: float
    itinerary: tuple[str, ...]


def _arc_bounds_frac(arc: Arc) -> tuple[Fraction, Fraction]:
    lo, hi = arc.interval()
    return Fraction(lo), Fraction(hi)


def _frac_in_arc(x: Fraction, arc: Arc) -> bool:
    lo, hi = _arc_bounds_frac(arc)
    t = x - lo
    t -= floor(t)
    return 0 < t < hi - lo


def _image_arc(arc: Arc, K: int, pad: float = 1e-12) -> Arc:
    """Forward image under x -> K x, shrunk by `pad` against float rounding."""
    lo, hi = arc.interval()
    lo2, hi2 = K * lo + pad, K * hi - pad
    if hi2 - lo2 >= 1.0:
        return Arc(0.0, 0.5)
    return Arc(reduce_coords(0.5 * (lo2 + hi2)), 0.5 * (hi2 - lo2))


def _cut_interval(p_lo, p_hi, c_lo, c_hi):
    """Open interval (p_lo, p_hi) minus closed (c_lo, c_hi)."""
    if c_hi <= p_lo or c_lo >= p_hi:
        return [(p_lo, p_hi)]
    out = []
    if c_lo > p_lo:
        out.append((p_lo, c_lo))
    if c_hi < p_hi:
        out.append((c_hi, p_hi))
    return out


def _arc_difference(a: Arc, holes: list[Arc]) -> list[Arc]:
    """Components of a minus the union of holes (on lifts)."""
    segs = [a.interval()]
    for hole in holes:
        h_lo, h_hi = hole.interval()
        new_segs = []
        for s_lo, s_hi in segs:
            pieces = [(s_lo, s_hi)]
            for k in range(int(floor(s_lo - h_hi)) - 1, int(floor(s_hi - h_lo)) + 2):
                pieces = [
                    cut
                    for p_lo, p_hi in pieces
                    for cut in _cut_interval(p_lo, p_hi, h_lo + k, h_hi + k)
                ]
            new_segs.extend(pieces)
        segs = [(lo, hi) for lo, hi in new_segs if hi - lo > 1e-13]
    return [Arc(reduce_coords(0.5 * (lo + hi)), 0.5 * (hi - lo)) for lo, hi in segs]


def _shrink(arc: Arc, pad: float = 1e-12) -> Arc | None:
    if arc.half_width <= pad:
        return None
    return Arc(arc.center, arc.half_width - pad)


def stable_witness(
    map_like,
    W: Box,
    tol: float = 1e-6,
    ball_radius: float = 0.05,
    max_depth: int = 60,
    max_expand: int = 64,
) -> StableWitness:
    """Point of W whose forward orbit lands exactly on {p} x B.

    Three phases mirror the stable-density argument: (i) expand the base
    factor of W to the full circle while keeping the fiber action exact
    (identity or a whole letter per step), (ii) spell a semigroup word
    taking the fiber into the inner half of B, (iii) pin the base
    itinerary onto p by exact rational backward preimages.  The base
    coordinate of the witness is a Fraction, so the landing at p is
    exact under replay; the fiber lands strictly inside B.
    """
    base = map_like.base
    pair = map_like.pair
    if base.m1 != 1:
        raise ParameterError("stable_witness is implemented for m1 = 1")
    if W.dim != 2:
        raise ParameterError("W must be a 2-d box")
    K = base.degree**base.power
    u_arc, v_arc = base.U.arcs[0], base.V.arcs[0]
    u_fat = u_arc.fatten(base.epsilon)
    v_fat = v_arc.fatten(base.epsilon)
    inner_b = Arc(pair.a1, 0.5 * ball_radius)  # margin absorbs fiber float error

    surgery_base_shadow = None
    surgery_fiber_zone = None
    if isinstance(map_like, SingularMap):
        lo, hi = map_like.fiber.support
        surgery_fiber_zone = Arc(
            reduce_coords(0.5 * (lo + hi)), 0.5 * (hi - lo) + 1e-9
        )
        surgery_base_shadow = Arc(float(map_like.s[0]), map_like.r + 1e-9)

    # -- phase 1: expand the base factor, tracking exact fiber actions ----
    cur = W.arcs[0]
    y = np.array([W.arcs[1].center])
    plan: list[tuple[str, Arc]] = []  # per step: fiber action, chosen base arc
    m = 0
    while cur.half_width < 0.5:
        if m >= max_expand:
            raise SearchExhaustedError("base factor failed to expand to the circle")
        holes = [u_fat, v_fat]
        if surgery_fiber_zone is not None and surgery_fiber_zone.contains(float(y[0])):
            holes.append(surgery_base_shadow)
        candidates: list[tuple[str, Arc]] = []
        for piece in _arc_difference(cur, holes):
            candidates.append(("id", piece))
        for piece in arc_intersection(cur, u_arc):
            candidates.append(("g1", piece))
        for piece in arc_intersection(cur, v_arc):
            candidates.append(("g2", piece))
        candidates = [(kind, s) for kind, p in candidates if (s := _shrink(p)) is not None]
        if not candidates:
            raise SearchExhaustedError("no pure-action sub-arc available while expanding")
        kind, chosen = max(candidates, key=lambda kp: kp[1].half_width)
        plan.append((kind, chosen))
        if kind == "g1":
            y = pair.g1(y)
        elif kind == "g2":
            y = pair.g2(y)
        cur = _image_arc(chosen, K)
        m += 1

    # -- phase 2: spell a word into the inner target ball ------------------
    word = branch_to_target(pair, float(y[0]), inner_b, max_depth=max_depth)
    n = len(word)
    for letter in reversed(word):
        region = _shrink(u_arc if letter == 1 else v_arc)
        if region is None:
            raise SearchExhaustedError("blending arcs too thin to spell through")
        plan.append(("g1" if letter == 1 else "g2", region))
        y = pair.g1(y) if letter == 1 else pair.g2(y)
    assert inner_b.contains(float(y[0]))

    # -- phase 3: exact backward pin of the base itinerary onto p ----------
    b = Fraction(0)  # p
    for _, region in reversed(plan):
        found = None
        for j in range(K):
            cand = (b + j) / K
            if _frac_in_arc(cand, region):
                found = cand
                break
        if found is None:
            raise SearchExhaustedError("backward preimage missed its region (internal)")
        b = found

    # -- replay: exact base through Fractions, fiber in floats -------------
    x_exact = b
    y_replay = np.array([W.arcs[1].center])
    itinerary = []
    for kind, _region in plan:
        if kind == "g1":
            assert _frac_in_arc(x_exact, u_arc)
            y_replay = pair.g1(y_replay)
        elif kind == "g2":
            assert _frac_in_arc(x_exact, v_arc)
            y_replay = pair.g2(y_replay)
        else:
            assert not _frac_in_arc(x_exact, u_fat) and not _frac_in_arc(x_exact, v_fat)
        itinerary.append(kind)
        x_exact = (K * x_exact) % 1
    assert x_exact == 0, "exact base itinerary failed to land on p"
    fiber_err = max(0.0, float(dist_circle(float(y_replay[0]), pair.a1)) - ball_radius)
    landing_error = float(np.hypot(0.0, fiber_err))

    witness = StableWitness(
        point=(float(b), W.arcs[1].center),
        base_exact=b,
        m=m,
        n=n,
        landing_error=landing_error,
        itinerary=tuple(itinerary),
    )
    if not W.contains(np.array(witness.point)[None, :]):
        raise SearchExhaustedError("constructed witness left W (internal)")
    if landing_error >= tol:
        raise SearchExhaustedError(f"landing error {landing_error} exceeds tol {tol}")
    return witness


def replay_witness(map_like, witness: StableWitness, ball_radius: float = 0.05) -> float:
    """Forward-iterate the witness m+n steps; distance to {p} x B.

    The base coordinate replays through exact rational arithmetic (the
    float orbit of an expanding map loses one digit per step, so floats
    could not certify the landing); the fiber replays in floats.
    """
    base = map_like.base
    pair = map_like.pair
    K = base.degree**base.power
    u_arc, v_arc = base.U.arcs[0], base.V.arcs[0]
    u_fat, v_fat = u_arc.fatten(base.epsilon), v_arc.fatten(base.epsilon)
    x = witness.base_exact
    y = np.array([witness.point[1]])
    for _ in range(witness.m + witness.n):
        if _frac_in_arc(x, u_arc):
            y = pair.g1(y)
        elif _frac_in_arc(x, v_arc):
            y = pair.g2(y)
        elif _frac_in_arc(x, u_fat) or _frac_in_arc(x, v_fat):
            raise ParameterError("witness replay entered a ramp; construction broken")
        if isinstance(map_like, SingularMap):
            lo, hi = map_like.fiber.support
            zone = Arc(reduce_coords(0.5 * (lo + hi)), 0.5 * (hi - lo))
            if zone.contains(float(y[0])) and dist_circle(float(x), map_like.s[0]) < map_like.r:
                # construction steers around the surgery ball; verify that here
                w = float(signed_lift(y[0], 0.0))
                mod = map_like.fiber.value(w) * map_like.gate.value(float(signed_lift(float(x), 0.0)) ** 2)
                if mod != 0.0:
                    raise ParameterError("witness replay hit the active surgery zone")
        x = (K * x) % 1
    base_err = float(dist_circle(float(x), 0.0)) if x != 0 else 0.0
    fiber_err = max(0.0, float(dist_circle(float(y[0]), pair.a1)) - ball_radius)
    return float(np.hypot(base_err, fiber_err))


# ---------------------------------------------------------------------------
# box transitivity (sampled reachability grid)

@dataclass(frozen=True)
class TransitivityReport:
    strongly_connected: bool
    diameter: int
    n_components: int
    n_edges: int
    grid_k: int
    horizon: int
    samples_per_cell: int
    seed: int
    edge_src: np.ndarray = field(repr=False, compare=False)
    edge_dst: np.ndarray = field(repr=False, compare=False)
    witness_start: np.ndarray = field(repr=False, compare=False)
    witness_steps: np.ndarray = field(repr=False, compare=False)

    def out_degree(self) -> np.ndarray:
        deg = np.zeros(self.grid_k * self.grid_k, dtype=np.int64)
        np.add.at(deg, self.edge_src, 1)
        return deg.reshape(self.grid_k, self.grid_k)


def box_transitivity(
    map_like,
    grid_k: int = 64,
    horizon: int = 40,
    samples_per_cell: int = 25,
    seed: int = 0,
    compute_diameter: bool = True,
) -> TransitivityReport:
    """Evidence-backed reachability between grid cells.

    An edge (c, c') is recorded when some sampled point of c lands in c'
    within `horizon` iterates, and stores that witness.  Strong
    connectivity of the edge digraph is the transitivity surrogate; a
    missing edge is only "not found at this sampling".
    """
    if grid_k < 1:
        raise ParameterError("grid_k must be >= 1")
    if grid_k == 1:
        empty = np.zeros(0, dtype=np.int64)
        return TransitivityReport(
            strongly_connected=True, diameter=0, n_components=1, n_edges=0,
            grid_k=1, horizon=horizon, samples_per_cell=samples_per_cell, seed=seed,
            edge_src=empty, edge_dst=empty,
            witness_start=np.zeros((0, 2)), witness_steps=empty,
        )
    if map_like.dim != 2:
        raise ParameterError("reachability grid is implemented for T^2")
    rng = np.random.default_rng(seed)
    cells = grid_k * grid_k
    ii, jj = np.meshgrid(np.arange(grid_k), np.arange(grid_k), indexing="ij")
    src = np.repeat((ii * grid_k + jj).ravel(), samples_per_cell)
    x0 = (np.repeat(ii.ravel(), samples_per_cell) + rng.random(cells * samples_per_cell)) / grid_k
    y0 = (np.repeat(jj.ravel(), samples_per_cell) + rng.random(cells * samples_per_cell)) / grid_k
    starts = np.column_stack([x0, y0])

    pts = starts
    pair_codes, steps_codes, sample_codes = [], [], []
    sample_idx = np.arange(len(starts), dtype=np.int32)
    for t in range(1, horizon + 1):
        pts = map_like.eval_batch(pts)
        ci = np.minimum((pts[:, 0] * grid_k).astype(int), grid_k - 1)
        cj = np.minimum((pts[:, 1] * grid_k).astype(int), grid_k - 1)
        pair_codes.append(src * cells + ci * grid_k + cj)
        steps_codes.append(np.full(len(starts), t, dtype=np.int32))
        sample_codes.append(sample_idx)
    codes = np.concatenate(pair_codes)
    steps = np.concatenate(steps_codes)
    samples = np.concatenate(sample_codes)
    uniq, first = np.unique(codes, return_index=True)
    edge_src = (uniq // cells).astype(np.int64)
    edge_dst = (uniq % cells).astype(np.int64)
    witness_start = starts[samples[first]]
    witness_steps = steps[first]

    A = csr_matrix(
        (np.ones(len(edge_src), dtype=np.int8), (edge_src, edge_dst)),
        shape=(cells, cells),
    )
    n_components, _ = connected_components(A, directed=True, connection="strong")
    strongly_connected = bool(n_components == 1)
    diameter = -1
    if strongly_connected and compute_diameter:
        from . import kernels

        diameter = kernels.graph_diameter(A.indptr.astype(np.int64), A.indices.astype(np.int64), cells)
    return TransitivityReport(
        strongly_connected=strongly_connected,
        diameter=diameter,
        n_components=int(n_components),
        n_edges=len(edge_src),
        grid_k=grid_k,
        horizon=horizon,
        samples_per_cell=samples_per_cell,
        seed=seed,
        edge_src=edge_src,
        edge_dst=edge_dst,
        witness_start=witness_start,
        witness_steps=witness_steps,
    )


def replay_edges(map_like, report: TransitivityReport, indices) -> bool:
    """Re-iterate stored witnesses and confirm they land in their target cells."""
    k = report.grid_k
    for i in np.atleast_1d(indices):
        pt = report.witness_start[i][None, :]
        for _ in range(int(report.witness_steps[i])):
            pt = map_like.eval_batch(pt)
        ci = min(int(pt[0, 0] * k), k - 1)
        cj = min(int(pt[0, 1] * k), k - 1)
        if ci * k + cj != int(report.edge_dst[i]):
            return False
    return True


# ---------------------------------------------------------------------------
# robustness sweep

@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: int
    c1_norm: float
    singular_pass: bool | None
    transitive_pass: bool | None
    zero_fiber: float | None
    zero_residual: float | None


@dataclass(frozen=True)
class SweepReport:
    trials: tuple[TrialResult, ...]
    eta: float

    @property
    def singular_passes(self) -> int:
        return sum(1 for t in self.trials if t.singular_pass)

    @property
    def transitive_passes(self) -> int:
        return sum(1 for t in self.trials if t.transitive_pass)

    @property
    def all_pass(self) -> bool:
        return all(
            (t.singular_pass is not False) and (t.transitive_pass is not False)
            for t in self.trials
        )


def _det_zero_on_fiber_segment(pm, x1: float, ya: float, yb: float, tol: float):
    """Bisect det(D(x1, y)) to |det| <= tol between fiber values ya < yb."""

    def det_at(yv: float) -> float:
        return pm.jacobian_det(np.array([x1, reduce_coords(yv)]))

    fa, fb = det_at(ya), det_at(yb)
    if not ((fa > 0.0) ^ (fb > 0.0)):
        return None
    best_y, best_f = (ya, abs(fa)) if abs(fa) < abs(fb) else (yb, abs(fb))
    lo, hi, flo = ya, yb, fa
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = det_at(mid)
        if abs(fm) < best_f:
            best_y, best_f = mid, abs(fm)
        if best_f <= tol:
            break
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    if best_f <= tol:
        return best_y, best_f
    return None


def robustness_sweep(
    map_like: SingularMap,
    trials: int,
    eta: float,
    seed: int = 0,
    grid_k: int = 32,
    horizon: int = 40,
    samples_per_cell: int = 25,
    bump_count: int = 3,
    check_singular: bool = True,
    check_transitive: bool = True,
    transitive_trials: int | None = None,
    residual_rel: float = 1e-9,
) -> SweepReport:
    """Seeded C^1 perturbations; per trial re-verify singularity and transitivity.

    Singularity: the perturbed determinant along the fiber segment
    between the two marked knot points still changes sign, and the zero
    is located by bisection.  Transitivity: the coarse reachability grid
    stays strongly connected.  Trial seeds are seed + trial index.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    det_scale = map_like.base.det
    ya = FIBER_BASE_KNOT + map_like.fiber.delta / 4.0
    yb = FIBER_BASE_KNOT + map_like.fiber.delta / 2.0
    x1 = float(map_like.s[0])
    results = []
    for trial in range(trials):
        tseed = seed + trial
        fld = make_perturbation(
            PerturbationSpec(seed=tseed, eta=eta, bump_count=bump_count, dim=map_like.dim)
        )
        pm = PerturbedMap(map_like, fld)
        singular_pass = None
        zero_fiber = zero_residual = None
        if check_singular:
            hit = _det_zero_on_fiber_segment(pm, x1, ya, yb, residual_rel * det_scale)
            singular_pass = hit is not None
            if hit is not None:
                zero_fiber, zero_residual = float(hit[0]), float(hit[1])
        transitive_pass = None
        if check_transitive and (transitive_trials is None or trial < transitive_trials):
            rep = box_transitivity(
                pm, grid_k=grid_k, horizon=horizon,
                samples_per_cell=samples_per_cell, seed=tseed, compute_diameter=False,
            )
            transitive_pass = rep.strongly_connected
        results.append(
            TrialResult(
                trial=trial,
                seed=tseed,
                c1_norm=fld.measured_c1,
                singular_pass=singular_pass,
                transitive_pass=transitive_pass,
                zero_fiber=zero_fiber,
                zero_residual=zero_residual,
            )
        )
    return SweepReport(trials=tuple(results), eta=eta)
