"""Hot-loop kernels with a numba implementation and a pure-numpy fallback.

The backend is chosen once at import time from the environment variable
RTMAP_BACKEND: "numba" (require numba), "numpy" (force the fallback), or
"auto"/unset (numba when importable, numpy otherwise).  Both backends
implement the same positional signatures; `get_backend` exposes them for
parity tests and benchmarks.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np


class KernelParams(NamedTuple):
    """Flattened map parameters, in the order the backends consume them."""

    m1: int
    K: float
    uc: np.ndarray
    uh: np.ndarray
    vc: np.ndarray
    vh: np.ndarray
    eps: float
    beta: float
    alpha: float
    dalpha: float
    sur_on: bool
    s: np.ndarray
    r: float
    theta: float
    delta: float
    off: np.ndarray
    pc: np.ndarray
    pw: np.ndarray
    pdir: np.ndarray
    pamp: np.ndarray
    pscale: float


def _load(name: str):
    if name == "numpy":
        from . import numpy_backend

        return numpy_backend
    if name == "numba":
        from . import numba_backend

        return numba_backend
    raise ValueError(f"unknown backend {name!r}")


def _select():
    choice = os.environ.get("RTMAP_BACKEND", "auto").strip().lower()
    if choice in ("numpy", "numba"):
        return _load(choice)
    if choice not in ("", "auto"):
        raise ValueError(f"RTMAP_BACKEND must be 'numba', 'numpy' or 'auto', got {choice!r}")
    try:
        return _load("numba")
    except ImportError:
        return _load("numpy")


_impl = _select()


def backend_name() -> str:
    return _impl.NAME


def get_backend(name: str):
    """Load a specific backend module (for tests and benchmarks)."""
    return _load(name)


def _prep(pts: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(pts, dtype=np.float64)


def step_batch(kp: KernelParams, pts: np.ndarray) -> np.ndarray:
    """One forward step of the (optionally surgered/perturbed) map."""
    return _impl.step_batch(_prep(pts), *kp)


def jac_batch(kp: KernelParams, pts: np.ndarray) -> np.ndarray:
    """Analytic Jacobians, shape (n, d, d)."""
    return _impl.jac_batch(_prep(pts), *kp)


def det_batch(kp: KernelParams, pts: np.ndarray) -> np.ndarray:
    """Analytic Jacobian determinants, shape (n,)."""
    return _impl.det_batch(_prep(pts), *kp)


def graph_diameter(indptr: np.ndarray, indices: np.ndarray, n: int) -> int:
    """Diameter of a directed graph in CSR form; -1 if not strongly connected."""
    return int(
        _impl.graph_diameter(
            np.ascontiguousarray(indptr, dtype=np.int64),
            np.ascontiguousarray(indices, dtype=np.int64),
            n,
        )
    )
