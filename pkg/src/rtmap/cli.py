"""Command-line runner: configuration in, CSV/PGM evidence out.

Exit codes: 0 = verification passed, 1 = verification failed,
2 = configuration or usage error.  Re-running a command with the same
config and seed reproduces byte-identical CSV outputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import write_csv, write_manifest, write_pgm
from .config import ConfigError, RunConfig, build_maps, load_config
from .errors import SearchExhaustedError
from .geometry import Arc, Box
from .skew import orbit
from .surgery import critical_trace
from .verify import (
    box_transitivity,
    classify_fixed_points,
    replay_witness,
    robustness_sweep,
    stable_witness,
    unstable_coverage,
)

COMMANDS = (
    "build",
    "orbit",
    "fixed-points",
    "unstable-coverage",
    "stable-witness",
    "transitivity",
    "critical-set",
    "cantor",
    "perturb-sweep",
    "all",
)


def _say(msg: str) -> None:
    print(msg)


def cmd_build(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    base = maps.base
    lines = [
        f"degree = {base.degree}",
        f"power  = {base.power}",
        f"expansion = {base.expansion}",
        f"det(DF) = {base.det}",
        f"U covers circle: {base.covers_circle(base.U)}",
        f"V covers circle: {base.covers_circle(base.V)}",
        f"surgery = {'on' if maps.singular is not None else 'off'}",
    ]
    (out / "build.txt").write_text("\n".join(lines) + "\n")
    _say("\n".join(lines))
    _say("PASS: build")
    return 0


def cmd_orbit(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    rng = np.random.default_rng(seed)
    m = maps.main_map
    start = rng.random(m.dim)
    path = orbit(m, start, cfg.verification.orbit_steps)
    m1 = maps.base.m1
    header = ["step"] + [f"x{j}" for j in range(m1)] + [f"y{j}" for j in range(path.shape[1] - m1)]
    rows = [[t] + list(path[t]) for t in range(len(path))]
    write_csv(out / "orbit.csv", header, rows)
    _say(f"PASS: orbit ({len(path) - 1} steps)")
    return 0


def cmd_fixed_points(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    reports = classify_fixed_points(maps.main_map)
    rows = []
    for rep in reports:
        rows.append(
            list(rep.point)
            + [rep.classification, rep.residual]
            + [abs(ev) for ev in rep.eigenvalues]
        )
    m1 = maps.base.m1
    header = (
        [f"x{j}" for j in range(m1)]
        + ["y0", "classification", "residual"]
        + [f"eig_mag{j}" for j in range(m1 + 1)]
    )
    write_csv(out / "fixed_points.csv", header, rows)
    saddle, source = reports[0], reports[1]
    ok = (
        saddle.classification == "saddle"
        and source.classification == "source"
        and saddle.residual == 0.0
        and source.residual == 0.0
    )
    _say(f"(p, a1): {saddle.classification}, residual {saddle.residual}")
    _say(f"(p, r1): {source.classification}, residual {source.residual}")
    _say("PASS: fixed-points" if ok else "FAIL: fixed-points")
    return 0 if ok else 1


def cmd_unstable_coverage(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    v = cfg.verification
    rep = unstable_coverage(
        maps.main_map,
        grid_k=v.coverage_grid_k,
        max_iters=v.max_iters,
        seed=seed,
        n_seed=v.coverage_seeds,
        samples_per_cell=v.coverage_samples_per_cell,
    )
    write_csv(
        out / "coverage.csv",
        ["iterate", "fraction"],
        [[t + 1, f] for t, f in enumerate(rep.fractions)],
    )
    write_pgm(out / "coverage.pgm", rep.hits)
    ok = rep.final_fraction >= 0.99
    _say(f"coverage after {v.max_iters} iterates: {rep.final_fraction:.4f}")
    _say("PASS: unstable-coverage" if ok else "FAIL: unstable-coverage (< 0.99)")
    return 0 if ok else 1


def cmd_stable_witness(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    v = cfg.verification
    rng = np.random.default_rng(seed)
    m = maps.main_map
    rows, ok = [], True
    for i in range(v.stable_boxes):
        w1 = Arc(float(rng.random()), v.stable_box_width)
        w2 = Arc(float(rng.random()), max(v.stable_box_width, 0.02))
        box = Box((w1, w2))
        try:
            wit = stable_witness(m, box, tol=v.tol, ball_radius=v.stable_ball_radius)
            replay_err = replay_witness(m, wit, ball_radius=v.stable_ball_radius)
            good = replay_err < v.tol
        except SearchExhaustedError as exc:
            _say(f"witness {i}: search failed: {exc}")
            wit, replay_err, good = None, float("nan"), False
        ok &= good
        rows.append(
            [i, w1.center, w1.half_width, w2.center, w2.half_width]
            + ([wit.point[0], wit.point[1], wit.m, wit.n, wit.landing_error, replay_err]
               if wit else ["", "", "", "", "", replay_err])
        )
    write_csv(
        out / "witnesses.csv",
        ["box", "w1_center", "w1_half", "w2_center", "w2_half",
         "x", "y", "m", "n", "landing_error", "replay_error"],
        rows,
    )
    _say("PASS: stable-witness" if ok else "FAIL: stable-witness")
    return 0 if ok else 1


def cmd_transitivity(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    v = cfg.verification
    rep = box_transitivity(
        maps.main_map,
        grid_k=v.grid_k,
        horizon=v.horizon,
        samples_per_cell=v.samples_per_cell,
        seed=seed,
    )
    (out / "transitivity.txt").write_text(
        f"strongly_connected = {rep.strongly_connected}\n"
        f"components = {rep.n_components}\n"
        f"diameter = {rep.diameter}\n"
        f"edges = {rep.n_edges}\n"
        f"grid_k = {rep.grid_k}\nhorizon = {rep.horizon}\n"
        f"samples_per_cell = {rep.samples_per_cell}\nseed = {rep.seed}\n"
    )
    write_pgm(out / "reachability.pgm", rep.out_degree())
    _say(f"strongly connected: {rep.strongly_connected} "
         f"(components {rep.n_components}, diameter {rep.diameter}, edges {rep.n_edges})")
    _say("PASS: transitivity" if rep.strongly_connected else
         "FAIL: transitivity (not strongly connected at this sampling; inconclusive as a refutation)")
    return 0 if rep.strongly_connected else 1


def cmd_critical_set(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    v = cfg.verification
    m = maps.main_map
    if maps.singular is not None:
        trace = critical_trace(maps.singular, v.critical_resolution)
    else:
        center = np.asarray(cfg.surgery.s, dtype=float)
        trace = critical_trace(
            maps.skew, v.critical_resolution, center=center, radius=cfg.surgery.r
        )
    rows = [[p[0], p[1], res] for p, res in zip(trace.points, trace.residuals)]
    write_csv(out / "critical_set.csv", ["x", "y", "det_residual"], rows)
    if trace.count == 0:
        _say("FAIL: critical-set is empty inside the scanned ball")
        return 1
    _say(f"PASS: critical-set ({trace.count} located zeros)")
    return 0


def cmd_cantor(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    from .expanding import cantor_components

    base = maps.base
    rows, ok = [], True
    prev_width = None
    for depth in range(5):
        approx = cantor_components(base, depth)
        count, width = approx.count, approx.max_width
        need = 2 ** (depth + 1)
        good = count >= need
        if prev_width is not None:
            # 1e-9 slack absorbs arc-bound rounding accumulated over levels
            good &= width <= prev_width / base.expansion * (1.0 + 1e-9)
        ok &= good
        rows.append([depth, count, width])
        prev_width = width
    write_csv(out / "cantor.csv", ["depth", "count", "max_width"], rows)
    _say("PASS: cantor" if ok else "FAIL: cantor")
    return 0 if ok else 1


def cmd_perturb_sweep(cfg: RunConfig, maps, seed: int, out: Path) -> int:
    if maps.singular is None:
        _say("FAIL: perturb-sweep needs the surgery enabled")
        return 1
    w = cfg.sweep
    rep = robustness_sweep(
        maps.singular,
        trials=w.trials_singular,
        eta=w.eta,
        seed=seed,
        grid_k=w.grid_k,
        horizon=cfg.verification.horizon,
        samples_per_cell=cfg.verification.samples_per_cell,
        bump_count=w.bump_count,
        transitive_trials=w.trials_transitive,
    )
    write_csv(
        out / "sweep.csv",
        ["trial", "seed", "singular_pass", "transitive_pass"],
        [[t.trial, t.seed, t.singular_pass, t.transitive_pass] for t in rep.trials],
    )
    n_tr = sum(1 for t in rep.trials if t.transitive_pass is not None)
    _say(f"singular: {rep.singular_passes}/{len(rep.trials)}, "
         f"transitive: {rep.transitive_passes}/{n_tr}")
    _say("PASS: perturb-sweep" if rep.all_pass else "FAIL: perturb-sweep")
    return 0 if rep.all_pass else 1


DISPATCH = {
    "build": cmd_build,
    "orbit": cmd_orbit,
    "fixed-points": cmd_fixed_points,
    "unstable-coverage": cmd_unstable_coverage,
    "stable-witness": cmd_stable_witness,
    "transitivity": cmd_transitivity,
    "critical-set": cmd_critical_set,
    "cantor": cmd_cantor,
    "perturb-sweep": cmd_perturb_sweep,
}


def dispatch(command: str, cfg: RunConfig, seed: int | None, out: Path) -> int:
    out.mkdir(parents=True, exist_ok=True)
    try:
        maps = build_maps(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    run_seed = cfg.sweep.seed if seed is None else seed
    if command == "all":
        worst = 0
        for name in COMMANDS[:-1]:
            _say(f"== {name} ==")
            code = DISPATCH[name](cfg, maps, run_seed, out)
            worst = max(worst, code)
        write_manifest(out)
        return worst
    code = DISPATCH[command](cfg, maps, run_seed, out)
    write_manifest(out)
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rtmap",
        description="Verification runner for the blended skew-product construction",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="path to the INI-style run config")
    parser.add_argument("--seed", type=int, default=None, help="override the run seed")
    parser.add_argument("--out", default="rtmap_out", help="output directory")
    parser.add_argument("--version", action="version", version=f"rtmap {__version__}")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return dispatch(args.command, cfg, args.seed, Path(args.out))


if __name__ == "__main__":
    sys.exit(main())
