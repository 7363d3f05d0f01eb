"""Blended skew products on torus products with a local singular surgery,
and numerical verifiers for their dynamical claims."""

__version__ = "0.1.0"

from .bump import BumpProfile
from .expanding import (
    CantorApproximation,
    ExpandingBase,
    build_expanding,
    cantor_components,
    preimage_components,
)
from .geometry import Arc, Box, Chart, box_intersects, dist_circle, reduce_coords, torus_point
from .ifs import IfsPair, branch_to_target, ifs_apply, minimality_check
from .perturb import PerturbationSpec, PerturbedMap, make_perturbation
from .skew import SkewMap, iterate_batch, orbit
from .surgery import CriticalTrace, FiberProfile, RadialProfile, SingularMap, critical_trace
from .verify import (
    box_transitivity,
    classify_fixed_points,
    fd_jacobian,
    replay_witness,
    robustness_sweep,
    stable_witness,
    unstable_coverage,
)

__all__ = [
    "Arc",
    "Box",
    "BumpProfile",
    "CantorApproximation",
    "Chart",
    "CriticalTrace",
    "ExpandingBase",
    "FiberProfile",
    "IfsPair",
    "PerturbationSpec",
    "PerturbedMap",
    "RadialProfile",
    "SingularMap",
    "SkewMap",
    "box_intersects",
    "box_transitivity",
    "branch_to_target",
    "build_expanding",
    "cantor_components",
    "classify_fixed_points",
    "critical_trace",
    "dist_circle",
    "fd_jacobian",
    "ifs_apply",
    "iterate_batch",
    "make_perturbation",
    "minimality_check",
    "orbit",
    "preimage_components",
    "reduce_coords",
    "replay_witness",
    "robustness_sweep",
    "stable_witness",
    "torus_point",
    "unstable_coverage",
]
