import numpy as np
import pytest

from rtmap.config import RunConfig, build_maps


@pytest.fixture(scope="session")
def default_maps():
    """Default construction, with the kernels warmed once per session."""
    maps = build_maps(RunConfig())
    pts = np.zeros((2, 2))
    maps.main_map.eval_batch(pts)
    maps.main_map.jacobian_batch(pts)
    maps.main_map.jacobian_det_batch(pts)
    maps.skew.eval_batch(pts)
    return maps


@pytest.fixture(scope="session")
def skew(default_maps):
    return default_maps.skew


@pytest.fixture(scope="session")
def singular(default_maps):
    return default_maps.singular
