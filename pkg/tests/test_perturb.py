import numpy as np
import pytest

from rtmap.errors import ParameterError
from rtmap.perturb import (
    PerturbationField,
    PerturbationSpec,
    PerturbedMap,
    make_perturbation,
)


def test_eta_zero_is_identity(singular):
    field = make_perturbation(PerturbationSpec(seed=1, eta=0.0))
    pm = PerturbedMap(singular, field)
    pts = np.random.default_rng(0).random((2000, 2))
    assert np.array_equal(pm.eval_batch(pts), singular.eval_batch(pts))


def test_eta_bound_refused():
    with pytest.raises(ParameterError):
        PerturbationSpec(seed=1, eta=0.5)
    with pytest.raises(ParameterError):
        PerturbationSpec(seed=1, eta=-0.1)


@pytest.mark.parametrize("seed", range(8))
def test_measured_norms_within_eta(seed):
    field = make_perturbation(PerturbationSpec(seed=seed, eta=0.01))
    assert 0.0 < field.measured_c1 <= 0.01 + 1e-15
    assert 0.0 < field.measured_c0 <= 0.01 + 1e-15
    assert max(field.measured_c0, field.measured_c1) == pytest.approx(0.0099, rel=1e-9)


def test_field_jacobian_matches_fd():
    field = make_perturbation(PerturbationSpec(seed=3, eta=0.01))
    rng = np.random.default_rng(5)
    pts = rng.random((2000, 2))
    h = 1e-6
    J = field.jac(pts)
    for c in range(2):
        shift = np.zeros(2)
        shift[c] = h
        fd = (field.value(pts + shift) - field.value(pts - shift)) / (2 * h)
        assert np.max(np.abs(fd - J[:, :, c])) < 1e-5


def test_c1_bound_via_finite_differences():
    # sampled sup of finite-difference derivatives stays within the budget
    field = make_perturbation(PerturbationSpec(seed=7, eta=0.01))
    rng = np.random.default_rng(6)
    pts = rng.random((5000, 2))
    h = 1e-6
    row_sums = np.zeros(len(pts))
    J = np.empty((len(pts), 2, 2))
    for c in range(2):
        shift = np.zeros(2)
        shift[c] = h
        J[:, :, c] = (field.value(pts + shift) - field.value(pts - shift)) / (2 * h)
    row_sums = np.abs(J).sum(axis=2).max(axis=1)
    assert row_sums.max() <= 0.01 * (1 + 1e-3)
    values = np.sqrt((field.value(pts) ** 2).sum(axis=1))
    assert values.max() <= 0.01 * (1 + 1e-12)


def test_localized_field_preserves_marked_determinants(singular):
    # support far from the surgery ball leaves the marked determinants bit-identical
    field = PerturbationField(
        centers=np.array([[0.7, 0.7]]),
        widths=np.array([0.08]),
        dirs=np.array([[0.6, 0.8]]),
        amps=np.array([1.0]),
        scale=0.01,
    )
    pm = PerturbedMap(singular, field)
    for pt in (singular.q1, singular.q2, singular.s):
        assert pm.jacobian_det(pt) == singular.jacobian_det(pt)
        assert np.array_equal(pm.eval(pt), singular.eval(pt))


def test_perturbed_jacobian_is_sum(singular):
    field = make_perturbation(PerturbationSpec(seed=11, eta=0.01))
    pm = PerturbedMap(singular, field)
    pts = np.random.default_rng(8).random((500, 2))
    J = pm.jacobian_batch(pts)
    J0 = singular.jacobian_batch(pts)
    Jf = field.jac(pts)
    assert np.allclose(J, J0 + Jf, atol=1e-14)


def test_seeded_reproducibility():
    a = make_perturbation(PerturbationSpec(seed=42, eta=0.01))
    b = make_perturbation(PerturbationSpec(seed=42, eta=0.01))
    assert np.array_equal(a.centers, b.centers)
    assert a.scale == b.scale
    c = make_perturbation(PerturbationSpec(seed=43, eta=0.01))
    assert not np.array_equal(a.centers, c.centers)
