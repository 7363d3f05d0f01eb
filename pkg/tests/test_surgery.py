import numpy as np
import pytest

from rtmap.config import RunConfig, build_maps
from rtmap.errors import ParameterError
from rtmap.geometry import Arc, Box, Chart, dist_circle, reduce_coords
from rtmap.surgery import (
    FIBER_BASE_KNOT,
    FIBER_SLOPES,
    FiberProfile,
    RadialProfile,
    SingularMap,
    critical_trace,
)
from rtmap.verify import fd_jacobian

THETA, DELTA = 0.03, 0.04


@pytest.fixture(scope="module")
def gate():
    return RadialProfile(theta=THETA)


@pytest.fixture(scope="module")
def fiber():
    return FiberProfile(delta=DELTA)


def test_gate_peak_and_support(gate):
    assert gate.value(1 / 16) == 2.0
    assert gate.value(1 / 16 + THETA) == 0.0
    assert gate.value(1 / 16 - THETA) == 0.0
    assert gate.value(0.5) == 0.0
    assert gate.deriv(1 / 16) == 0.0


def test_gate_unique_critical_point(gate):
    # strictly monotone on each side wherever the value has not underflowed
    left = np.linspace(1 / 16 - THETA + 1e-6, 1 / 16 - 1e-9, 2000)
    right = np.linspace(1 / 16 + 1e-9, 1 / 16 + THETA - 1e-6, 2000)
    lv, rv = gate.value(left), gate.value(right)
    assert np.all(gate.deriv(left)[lv > 0] > 0)
    assert np.all(gate.deriv(right)[rv > 0] < 0)
    assert (lv > 0).sum() > 1500 and (rv > 0).sum() > 1500


def test_gate_deriv_matches_fd(gate):
    ts = np.linspace(0.01, 0.12, 3000)
    h = 1e-7
    fd = (gate.value(ts + h) - gate.value(ts - h)) / (2 * h)
    assert np.max(np.abs(fd - gate.deriv(ts))) < 1e-6 * max(1.0, np.abs(fd).max())


def test_fiber_knot_constraints(fiber):
    knots = fiber.knots
    assert np.allclose(fiber.value(knots), 0.0, atol=1e-10)
    derivs = fiber.deriv(knots)
    assert np.allclose(derivs, FIBER_SLOPES, atol=1e-10)
    assert derivs[1] == pytest.approx(0.5, abs=1e-10)
    assert derivs[2] == pytest.approx(-3.0, abs=1e-10)
    assert derivs[3] == pytest.approx(3.0, abs=1e-10)


def test_fiber_support(fiber):
    lo, hi = fiber.support
    assert lo == pytest.approx(0.25 - DELTA / 4)
    assert hi == pytest.approx(0.25 + 3 * DELTA / 4)
    ts = np.concatenate([np.linspace(-0.5, lo, 100), np.linspace(hi, 1.0, 100)])
    assert np.all(fiber.value(ts) == 0.0)
    assert np.all(fiber.deriv(ts) == 0.0)


def test_fiber_smoothness_across_endpoints(fiber):
    # one-sided finite differences agree across the support boundary: no kinks
    lo, hi = fiber.support
    h = 1e-7
    for edge in (lo, hi):
        left = (fiber.value(edge) - fiber.value(edge - h)) / h
        right = (fiber.value(edge + h) - fiber.value(edge)) / h
        assert abs(left - right) < 1e-6
    for knot in fiber.knots:
        left = (fiber.value(knot) - fiber.value(knot - h)) / h
        right = (fiber.value(knot + h) - fiber.value(knot)) / h
        assert abs(left - right) < 1e-5  # C^1 at knots; curvature is 0 there too


def test_fiber_deriv_matches_fd(fiber):
    ts = np.linspace(0.23, 0.29, 4000)
    h = 1e-7
    fd = (fiber.value(ts + h) - fiber.value(ts - h)) / (2 * h)
    assert np.max(np.abs(fd - fiber.deriv(ts))) < 1e-5


def test_parameter_chain_validation(default_maps):
    sk = default_maps.skew
    chart = Chart(base_offsets=(0.0, 0.0))
    s = np.array([0.25, 0.25])
    with pytest.raises(ParameterError):  # delta >= 2*theta
        SingularMap(skew=sk, chart=chart, s=s, r=0.12,
                    gate=RadialProfile(0.03), fiber=FiberProfile(0.08))
    with pytest.raises(ParameterError):  # 2*theta >= r
        SingularMap(skew=sk, chart=chart, s=s, r=0.05,
                    gate=RadialProfile(0.03), fiber=FiberProfile(0.04))
    with pytest.raises(ParameterError):  # ball reaches the blending region
        SingularMap(skew=sk, chart=chart, s=np.array([0.18, 0.25]), r=0.12,
                    gate=RadialProfile(0.03), fiber=FiberProfile(0.04))


def test_marked_points(singular):
    assert np.allclose(singular.q1, [0.25, 0.25 + DELTA / 4])
    assert np.allclose(singular.q2, [0.25, 0.25 + DELTA / 2])
    d1 = np.sqrt(np.sum(np.asarray(dist_circle(singular.q1, singular.s)) ** 2))
    d2 = np.sqrt(np.sum(np.asarray(dist_circle(singular.q2, singular.s)) ** 2))
    assert d1 < singular.r and d2 < singular.r


def test_eval_examples(singular):
    # at s the fiber profile vanishes: A(s) = (F(s1), s2)
    out = singular.eval(singular.s)
    assert out[0] == singular.base.eval_batch(np.array([0.25]))[0]
    assert out[1] == 0.25
    # both marked knot points keep their fiber
    assert singular.eval(singular.q1)[1] == singular.q1[1]
    assert singular.eval(singular.q2)[1] == singular.q2[1]


def test_equals_skew_outside_ball(singular, skew):
    rng = np.random.default_rng(12)
    pts = rng.random((10_000, 2))
    rho = np.sqrt(np.sum(np.asarray(dist_circle(pts, singular.s)) ** 2, axis=1))
    outside = pts[rho > singular.r]
    assert np.array_equal(singular.eval_batch(outside), skew.eval_batch(outside))


def test_equals_skew_when_fiber_clears_support(singular, skew):
    # inside the ball but with the fiber outside the profile support
    rng = np.random.default_rng(13)
    xs = 0.25 + 0.1 * (rng.random(2000) - 0.5)
    ys = 0.25 + 3 * DELTA / 4 + 1e-6 + 0.05 * rng.random(2000)
    pts = np.column_stack([xs, ys])
    assert np.array_equal(singular.eval_batch(pts), skew.eval_batch(pts))


def test_determinant_identities(singular):
    det_f = singular.base.det
    assert singular.jacobian_det(singular.q1) == pytest.approx(7 * det_f, rel=1e-9)
    assert singular.jacobian_det(singular.q2) == pytest.approx(-5 * det_f, rel=1e-9)
    assert abs(singular.jacobian_det(singular.s)) <= 1e-9 * det_f
    assert singular.jacobian_det(singular.q1) == 224.0
    assert singular.jacobian_det(singular.q2) == -160.0


def test_determinant_matches_fd(singular):
    rng = np.random.default_rng(14)
    offs = 0.9 * singular.r * (rng.random((2000, 2)) - 0.5)
    pts = reduce_coords(singular.s + offs)
    Jf = fd_jacobian(singular, pts, h=1e-6)
    det_f = Jf[:, 0, 0] * Jf[:, 1, 1] - Jf[:, 0, 1] * Jf[:, 1, 0]
    det_a = singular.jacobian_det_batch(pts)
    assert np.max(np.abs(det_f - det_a) / np.maximum(np.abs(det_a), 1.0)) < 1e-4


def test_sign_straddle(singular):
    assert singular.jacobian_det(singular.q1) > 0 > singular.jacobian_det(singular.q2)


def test_critical_trace_contains_s(singular):
    trace = critical_trace(singular, resolution=0.005)
    assert trace.count > 0
    pts = np.array(trace.points)
    gap = np.sqrt(np.sum(np.asarray(dist_circle(pts, singular.s)) ** 2, axis=1)).min()
    assert gap <= trace.resolution
    det_f = singular.base.det
    assert max(trace.residuals) <= 1e-9 * det_f


def test_critical_trace_empty_for_skew(singular, skew):
    trace = critical_trace(skew, resolution=0.01, center=singular.s, radius=singular.r)
    assert trace.count == 0


def test_critical_trace_survives_halved_delta(default_maps):
    halved = SingularMap(
        skew=default_maps.skew,
        chart=default_maps.singular.chart,
        s=default_maps.singular.s,
        r=default_maps.singular.r,
        gate=RadialProfile(THETA),
        fiber=FiberProfile(DELTA / 2),
    )
    trace = critical_trace(halved, resolution=0.004)
    assert trace.count > 0


def test_m1_2_determinants():
    cfg = RunConfig()
    cfg.blending.u = ((0.0, 0.02), (0.0, 0.02))
    cfg.blending.v = ((0.07, 0.02), (0.07, 0.02))
    cfg.surgery.s = (0.25, 0.0, 0.25)
    maps = build_maps(cfg)
    sg = maps.singular
    det_f = maps.base.det
    assert det_f == 1024.0
    assert sg.jacobian_det(sg.q1) == pytest.approx(7 * det_f, rel=1e-9)
    assert sg.jacobian_det(sg.q2) == pytest.approx(-5 * det_f, rel=1e-9)
    assert abs(sg.jacobian_det(sg.s)) <= 1e-9 * det_f
    pts = reduce_coords(sg.s + 0.05 * (np.random.default_rng(1).random((500, 3)) - 0.5))
    Jf = fd_jacobian(sg, pts, h=1e-6)
    det_fd = np.linalg.det(Jf)
    det_a = sg.jacobian_det_batch(pts)
    assert np.max(np.abs(det_fd - det_a) / np.maximum(np.abs(det_a), 1.0)) < 1e-4
