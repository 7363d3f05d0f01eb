import numpy as np
import pytest

from rtmap.errors import ParameterError, PrecisionError
from rtmap.expanding import (
    build_expanding,
    cantor_components,
    preimage_components,
    smallest_covering_power,
)
from rtmap.geometry import Arc, Box, dist_circle, reduce_coords


def _covers_by_sampling(degree, n, arc, grid=10_000):
    """Independent oracle: brute-force image covering on a dense grid."""
    xs = arc.sample(20 * grid)
    img = reduce_coords(float(degree) ** n * xs)
    return np.unique(np.minimum((img * grid).astype(int), grid - 1)).size == grid


def _box(c, h):
    return Box((Arc(c, h),))


@pytest.mark.parametrize(
    "degree,u,v,expected",
    [
        (2, (0.0, 0.02), (0.07, 0.02), 5),
        (2, (0.0, 0.25), (0.5, 0.2), 2),
        (3, (0.0, 0.02), (0.07, 0.02), 3),
    ],
)
def test_smallest_covering_power(degree, u, v, expected):
    U, V = _box(*u), _box(*v)
    n = smallest_covering_power(degree, (U, V))
    assert n == expected
    # oracle agreement: n covers, n-1 does not (for both boxes)
    for arc in (U.arcs[0], V.arcs[0]):
        assert _covers_by_sampling(degree, n, arc)
    assert not all(
        _covers_by_sampling(degree, n - 1, arc) for arc in (U.arcs[0], V.arcs[0])
    )


def test_build_validation():
    with pytest.raises(ParameterError):
        build_expanding(1, _box(0.0, 0.02), _box(0.07, 0.02), 0.01)
    with pytest.raises(ParameterError):
        # fattened boxes overlap: gap is 0.03, epsilon 0.02 on each side
        build_expanding(2, _box(0.0, 0.02), _box(0.07, 0.02), 0.02)
    with pytest.raises(ParameterError):
        build_expanding(2, _box(0.0, 0.02), _box(0.07, 0.02), 0.01, power_override=3)


def test_eval_examples(default_maps):
    base = default_maps.base
    assert base.eval_batch(np.array([0.0]))[0] == 0.0  # fixed point lands exactly
    assert base.eval_batch(np.array([0.01]))[0] == 0.32
    assert base.eval_batch(np.array([0.5]))[0] == 0.0
    assert base.expansion == 32.0 and base.det == 32.0


def test_covering_certificates(default_maps):
    base = default_maps.base
    assert base.covers_circle(base.U) and base.covers_circle(base.V)
    assert base.sampled_covering(base.U, grid=2048)
    assert base.sampled_covering(base.V, grid=2048)


def test_derivative_is_uniform_expansion(default_maps):
    # the linear map stretches every tangent vector by exactly degree^N
    base = default_maps.base
    rng = np.random.default_rng(5)
    v = rng.standard_normal(1000)
    assert np.all(np.abs(base.expansion * v) == base.expansion * np.abs(v))
    h = 1e-7
    x = rng.random(100)
    fd = (
        np.asarray(dist_circle(base.eval_batch(x + h), base.eval_batch(x - h)))
        / (2 * h)
    )
    assert np.allclose(fd, base.expansion, rtol=1e-6)


def test_preimage_full_circle_target(default_maps):
    base = default_maps.base
    comps = preimage_components(base, _box(0.5, 0.5), base.U)
    assert len(comps) >= 1
    # independent oracle: count connected runs of F^{-1}(target) ∩ U by scanning
    target = Arc(0.5, 0.5)
    xs = base.U.arcs[0].sample(200_001)
    member = np.asarray(target.contains(base.eval_batch(xs)))
    runs = int(np.sum(np.diff(member.astype(int)) == 1)) + int(member[0])
    assert len(comps) == runs == 2


def test_preimage_components_map_into_target(default_maps):
    base = default_maps.base
    target = _box(0.3, 0.01)
    for comp in preimage_components(base, target, base.V):
        arc = comp.arcs[0]
        mid_img = base.eval_batch(np.array([arc.center]))[0]
        assert target.arcs[0].contains(mid_img)
        assert base.V.arcs[0].contains(arc.center)


def test_preimage_disjoint_target(default_maps):
    base = default_maps.base
    # a target with no preimage inside a sliver: shrink `within` until the
    # branch spacing 1/32 skips it
    tiny = Arc(0.5, 1e-4)
    within = Arc(0.011, 1e-4)
    comps = preimage_components(default_maps.base, Box((tiny,)), Box((within,)))
    # preimages of 0.5 sit at (0.5+j)/32 = 0.015625 + j/32, none within 1e-4 of 0.011
    assert comps == []
    del base


def test_cantor_depth0_is_the_boxes(default_maps):
    approx = cantor_components(default_maps.base, 0)
    assert approx.count == 2
    assert approx.components[0] == default_maps.base.U
    assert approx.components[1] == default_maps.base.V


@pytest.mark.parametrize("depth", [0, 1, 2, 3, 4])
def test_cantor_counts_and_widths(default_maps, depth):
    base = default_maps.base
    approx = cantor_components(base, depth)
    assert approx.count >= 2 ** (depth + 1)
    # widths contract by the expansion factor, with slack for arc rounding
    assert approx.max_width <= 0.04 / base.expansion**depth * (1.0 + 1e-9)


def test_cantor_disjoint_and_forward_invariant(default_maps):
    base = default_maps.base
    prev = cantor_components(base, 2).components
    cur = cantor_components(base, 3).components
    ivs = sorted(b.arcs[0].interval() for b in cur)
    for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
        assert hi1 <= lo2 + 1e-15
    for b in cur:
        arc = b.arcs[0]
        img = Arc(reduce_coords(arc.center * base.expansion), arc.half_width * base.expansion)
        assert any(p.arcs[0].contains_arc(img) or
                   dist_circle(p.arcs[0].center, img.center) + img.half_width
                   <= p.arcs[0].half_width + 1e-10
                   for p in prev)


def test_cantor_iterates_stay_in_blend(default_maps):
    # every depth-n component keeps its first n forward images inside U ∪ V
    base = default_maps.base
    depth = 3
    for comp in cantor_components(base, depth).components:
        x = np.array([comp.arcs[0].center])
        for _ in range(depth):
            x = base.eval_batch(x)
            assert base.U.contains(x[:, None]) or base.V.contains(x[:, None])


def test_cantor_underflow_guard(default_maps):
    with pytest.raises(PrecisionError):
        cantor_components(default_maps.base, 12)
