"""Run configuration: INI-style files, defaults, and cross-parameter checks.

An empty file yields the full default configuration.  Every parameter
inequality required by the construction is re-validated at load time and
reported with the violated inequality spelled out, so a bad experiment
file fails before any computation starts.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bump import BumpProfile
from .errors import ParameterError
from .expanding import build_expanding
from .geometry import Arc, Box, Chart
from .ifs import IfsPair
from .skew import SkewMap
from .surgery import FiberProfile, RadialProfile, SingularMap


class ConfigError(Exception):
    """Bad configuration file or parameter chain; maps to exit code 2."""


GOLDEN_STEP = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class BaseSection:
    degree: int = 2
    n_override: int | None = None


@dataclass
class BlendingSection:
    u: tuple[tuple[float, float], ...] = ((0.0, 0.02),)
    v: tuple[tuple[float, float], ...] = ((0.07, 0.02),)
    epsilon: float = 0.01


@dataclass
class IfsSection:
    beta: float = 0.1
    alpha: float = GOLDEN_STEP


@dataclass
class SurgerySection:
    enabled: bool = True
    r: float = 0.12
    theta: float = 0.03
    delta: float = 0.04
    s: tuple[float, ...] = (0.25, 0.25)
    chart_window: float = 0.45


@dataclass
class VerificationSection:
    grid_k: int = 64
    horizon: int = 40
    samples_per_cell: int = 25
    max_iters: int = 40
    tol: float = 1e-6
    coverage_grid_k: int = 100
    coverage_seeds: int = 20000
    coverage_samples_per_cell: int = 64
    stable_ball_radius: float = 0.05
    stable_boxes: int = 10
    stable_box_width: float = 0.05
    orbit_steps: int = 200
    critical_resolution: float = 0.005


@dataclass
class SweepSection:
    trials_singular: int = 100
    trials_transitive: int = 20
    eta: float = 0.01
    seed: int = 20260809
    bump_count: int = 3
    grid_k: int = 32


@dataclass
class RunConfig:
    base: BaseSection = field(default_factory=BaseSection)
    blending: BlendingSection = field(default_factory=BlendingSection)
    ifs: IfsSection = field(default_factory=IfsSection)
    surgery: SurgerySection = field(default_factory=SurgerySection)
    verification: VerificationSection = field(default_factory=VerificationSection)
    sweep: SweepSection = field(default_factory=SweepSection)


def _parse_arcs(text: str) -> tuple[tuple[float, float], ...]:
    """Parse 'center:half_width[, center:half_width ...]'."""
    arcs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        bits = part.split(":")
        if len(bits) != 2:
            raise ConfigError(f"arc spec must be center:half_width, got {part!r}")
        arcs.append((float(bits[0]), float(bits[1])))
    if not arcs:
        raise ConfigError("empty arc list")
    return tuple(arcs)


def _get(parser, section, key, cast, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key).strip()
    if raw == "":
        return default
    try:
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r}") from exc


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a configuration file (missing keys take defaults)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    cfg = RunConfig()
    cfg.base.degree = _get(parser, "base", "degree", int, cfg.base.degree)
    cfg.base.n_override = _get(parser, "base", "n_override", int, cfg.base.n_override)
    cfg.blending.u = _get(parser, "blending", "u", _parse_arcs, cfg.blending.u)
    cfg.blending.v = _get(parser, "blending", "v", _parse_arcs, cfg.blending.v)
    cfg.blending.epsilon = _get(parser, "blending", "epsilon", float, cfg.blending.epsilon)
    cfg.ifs.beta = _get(parser, "ifs", "beta", float, cfg.ifs.beta)
    cfg.ifs.alpha = _get(parser, "ifs", "alpha", float, cfg.ifs.alpha)
    cfg.surgery.enabled = _get(parser, "surgery", "enabled", bool, cfg.surgery.enabled)
    cfg.surgery.r = _get(parser, "surgery", "r", float, cfg.surgery.r)
    cfg.surgery.theta = _get(parser, "surgery", "theta", float, cfg.surgery.theta)
    cfg.surgery.delta = _get(parser, "surgery", "delta", float, cfg.surgery.delta)
    s_text = _get(parser, "surgery", "s", str, None)
    if s_text is not None:
        cfg.surgery.s = tuple(float(v) for v in s_text.split(","))
    cfg.surgery.chart_window = _get(parser, "surgery", "chart_window", float, cfg.surgery.chart_window)
    v = cfg.verification
    v.grid_k = _get(parser, "verification", "grid_k", int, v.grid_k)
    v.horizon = _get(parser, "verification", "horizon", int, v.horizon)
    v.samples_per_cell = _get(parser, "verification", "samples_per_cell", int, v.samples_per_cell)
    v.max_iters = _get(parser, "verification", "max_iters", int, v.max_iters)
    v.tol = _get(parser, "verification", "tol", float, v.tol)
    v.coverage_grid_k = _get(parser, "verification", "coverage_grid_k", int, v.coverage_grid_k)
    v.coverage_seeds = _get(parser, "verification", "coverage_seeds", int, v.coverage_seeds)
    v.coverage_samples_per_cell = _get(
        parser, "verification", "coverage_samples_per_cell", int, v.coverage_samples_per_cell
    )
    v.stable_ball_radius = _get(parser, "verification", "stable_ball_radius", float, v.stable_ball_radius)
    v.stable_boxes = _get(parser, "verification", "stable_boxes", int, v.stable_boxes)
    v.stable_box_width = _get(parser, "verification", "stable_box_width", float, v.stable_box_width)
    v.orbit_steps = _get(parser, "verification", "orbit_steps", int, v.orbit_steps)
    v.critical_resolution = _get(parser, "verification", "critical_resolution", float, v.critical_resolution)
    w = cfg.sweep
    w.trials_singular = _get(parser, "sweep", "trials_singular", int, w.trials_singular)
    w.trials_transitive = _get(parser, "sweep", "trials_transitive", int, w.trials_transitive)
    w.eta = _get(parser, "sweep", "eta", float, w.eta)
    w.seed = _get(parser, "sweep", "seed", int, w.seed)
    w.bump_count = _get(parser, "sweep", "bump_count", int, w.bump_count)
    w.grid_k = _get(parser, "sweep", "grid_k", int, w.grid_k)

    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> None:
    """Re-check every parameter-chain inequality, naming violations."""
    if cfg.base.degree < 2:
        raise ConfigError(f"base degree must satisfy degree >= 2, got {cfg.base.degree}")
    if cfg.blending.epsilon <= 0:
        raise ConfigError("blending epsilon must satisfy epsilon > 0")
    try:
        U = Box(tuple(Arc(c, h) for c, h in cfg.blending.u))
        V = Box(tuple(Arc(c, h) for c, h in cfg.blending.v))
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    from .geometry import box_intersects

    if box_intersects(U.fatten(cfg.blending.epsilon), V.fatten(cfg.blending.epsilon)):
        raise ConfigError("blending boxes violate U_eps ∩ V_eps = ∅")
    if not 0.0 <= cfg.ifs.beta < 1.0 / (2.0 * np.pi):
        raise ConfigError("ifs beta must satisfy 0 <= beta < 1/(2*pi)")
    if not 0.0 <= cfg.ifs.alpha < 1.0:
        raise ConfigError("ifs alpha must satisfy 0 <= alpha < 1")
    s = cfg.surgery
    if s.enabled:
        if not 0.0 < s.delta < 2.0 * s.theta:
            raise ConfigError(f"surgery violates 0 < delta < 2*theta (delta={s.delta}, theta={s.theta})")
        if not 2.0 * s.theta < s.r:
            raise ConfigError(f"surgery violates 2*theta < r (theta={s.theta}, r={s.r})")
        if len(s.s) != len(cfg.blending.u) + 1:
            raise ConfigError("surgery point s must have m1+1 coordinates")
    if not 0.0 <= cfg.sweep.eta < 0.5:
        raise ConfigError("sweep eta must satisfy 0 <= eta < 0.5")


@dataclass(frozen=True)
class BuiltMaps:
    base: object
    pair: IfsPair
    bump: BumpProfile
    skew: SkewMap
    singular: SingularMap | None

    @property
    def main_map(self):
        return self.singular if self.singular is not None else self.skew


def build_maps(cfg: RunConfig) -> BuiltMaps:
    """Construct the full map stack from a validated configuration."""
    try:
        U = Box(tuple(Arc(c, h) for c, h in cfg.blending.u))
        V = Box(tuple(Arc(c, h) for c, h in cfg.blending.v))
        base = build_expanding(
            cfg.base.degree, U, V, cfg.blending.epsilon, power_override=cfg.base.n_override
        )
        pair = IfsPair(beta=cfg.ifs.beta, alpha=cfg.ifs.alpha)
        bump = BumpProfile(U=U, V=V, epsilon=cfg.blending.epsilon)
        skew = SkewMap(base=base, pair=pair, bump=bump)
        singular = None
        if cfg.surgery.enabled:
            d = base.m1 + 1
            chart = Chart(base_offsets=(0.0,) * d, window_half_width=cfg.surgery.chart_window)
            singular = SingularMap(
                skew=skew,
                chart=chart,
                s=np.asarray(cfg.surgery.s, dtype=float),
                r=cfg.surgery.r,
                gate=RadialProfile(cfg.surgery.theta),
                fiber=FiberProfile(cfg.surgery.delta),
            )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return BuiltMaps(base=base, pair=pair, bump=bump, skew=skew, singular=singular)
