import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from podsurge.datagen import RANDOM_MULTI_F, RANDOM_MULTI_U, SyntheticFieldModel, inlet_velocity, synthesize_nu_field
from podsurge.errors import DomainError, ShapeError
from podsurge.linalg import frobenius_relative_error
from podsurge.pod import (
    PodBasis,
    SnapshotMatrix,
    compute_pod,
    cumulative_energy_curve,
    load_basis,
    matrix_from_csv,
    matrix_to_csv,
    project,
    reconstruct,
    save_basis,
    snapshots_from_csv,
    snapshots_to_csv,
)


def snap(values, times=None, coords=None):
    values = np.asarray(values, dtype=float)
    if times is None:
        times = np.arange(values.shape[1], dtype=float)
    return SnapshotMatrix(values=values, times=times, node_coords=coords)


@pytest.fixture(scope="module")
def synthetic_field():
    t = np.arange(1000) * 0.002
    sig = inlet_velocity(list(zip(RANDOM_MULTI_U, RANDOM_MULTI_F)), t)
    return synthesize_nu_field(SyntheticFieldModel(), sig)


def test_snapshot_validation():
    with pytest.raises(DomainError):
        snap(np.ones((2, 3)), times=[0.0, 0.0, 1.0])
    with pytest.raises(ShapeError):
        snap(np.ones((2, 3)), times=[0.0, 1.0])
    with pytest.raises(DomainError):
        snap([[1.0, np.nan]])
    with pytest.raises(ShapeError):
        snap(np.ones((2, 3)), coords=np.zeros((3, 2)))


def test_rank_one():
    u = np.linspace(1, 2, 6)
    v = np.linspace(-1, 3, 5)
    basis = compute_pod(snap(np.outer(u, v)), 0.99)
    assert basis.n_kept == 1
    assert basis.energy_captured == pytest.approx(1.0, abs=1e-12)


def test_full_threshold_is_lossless(rng):
    a = rng.normal(size=(30, 12))
    basis = compute_pod(snap(a), 1.0)
    assert frobenius_relative_error(a, basis.modes @ basis.temporal_coefficients) <= 1e-8


def test_zero_matrix_rejected():
    with pytest.raises(DomainError):
        compute_pod(snap(np.zeros((3, 4))), 0.9)


@pytest.mark.parametrize("thr", [0.0, -0.1, 1.5])
def test_threshold_domain(rng, thr):
    with pytest.raises(DomainError):
        compute_pod(snap(rng.normal(size=(4, 4))), thr)


def test_needs_two_snapshots():
    with pytest.raises(DomainError):
        compute_pod(snap([[1.0], [2.0]]), 0.9)


def test_basis_invariants(rng):
    a = rng.normal(size=(25, 15))
    basis = compute_pod(snap(a), 0.9)
    n = basis.n_kept
    assert np.max(np.abs(basis.modes.T @ basis.modes - np.eye(n))) < 1e-10
    s2 = basis.singular_values**2
    assert basis.energy_captured == pytest.approx(s2[:n].sum() / s2.sum(), abs=1e-12)
    assert basis.energy_captured >= 0.9
    # minimality: one fewer mode would miss the threshold
    if n > 1:
        assert s2[: n - 1].sum() / s2.sum() < 0.9
    idx = np.argmax(np.abs(basis.modes), axis=0)
    assert np.all(basis.modes[idx, np.arange(n)] > 0)


def test_synthetic_field_energy_and_truncation(synthetic_field):
    # with the default generator 99% energy is reached by two modes
    basis = compute_pod(synthetic_field, 0.99)
    assert basis.n_kept == 2
    assert basis.n_kept < synthetic_field.n_snapshots // 100
    cum = cumulative_energy_curve(basis)
    assert cum[0] > 0.98 and cum[basis.n_kept - 1] >= 0.99
    err = frobenius_relative_error(synthetic_field.values, basis.approximation())
    # truncation error follows exactly from the discarded energy
    assert err**2 == pytest.approx(1.0 - basis.energy_captured, abs=1e-8)


@pytest.mark.xfail(strict=True, reason="the default generator keeps 2 modes at 0.99 energy; "
                   "err^2 = 1 - energy gives ~5.7% truncation error, so a 1% bound cannot hold")
def test_synthetic_field_one_percent_at_099(synthetic_field):
    basis = compute_pod(synthetic_field, 0.99)
    assert frobenius_relative_error(synthetic_field.values, basis.approximation()) <= 0.01


def test_pod_runtime_200_by_500(rng):
    a = rng.normal(size=(200, 500))
    start = time.perf_counter()
    compute_pod(snap(a), 0.99)
    assert time.perf_counter() - start < 10.0


def test_project_and_reconstruct(rng):
    basis = compute_pod(snap(rng.normal(size=(12, 9))), 1.0)
    n = basis.n_kept
    np.testing.assert_allclose(project(basis, basis.modes[:, 1]), np.eye(n)[1], atol=1e-12)
    np.testing.assert_allclose(project(basis, np.zeros(12)), 0.0)
    np.testing.assert_allclose(reconstruct(basis, np.zeros(n)), 0.0)
    np.testing.assert_allclose(reconstruct(basis, np.eye(n)[2]), basis.modes[:, 2])
    with pytest.raises(ShapeError):
        project(basis, np.ones(11))
    with pytest.raises(ShapeError):
        reconstruct(basis, np.ones(n + 1))


def test_reconstruct_stored_snapshot_within_truncation(synthetic_field):
    basis = compute_pod(synthetic_field, 0.99)
    s = 123
    field = reconstruct(basis, basis.temporal_coefficients[:, s])
    err = np.linalg.norm(field - synthetic_field.values[:, s])
    # a single column can't exceed the total discarded energy
    total = np.sqrt((1 - basis.energy_captured) * np.sum(synthetic_field.values**2))
    assert err <= total + 1e-9


def test_cumulative_energy_examples():
    np.testing.assert_allclose(cumulative_energy_curve(np.array([1.0, 0.0, 0.0])), [1, 1, 1])
    np.testing.assert_allclose(cumulative_energy_curve(np.array([3.0, 4.0])), [9 / 25, 1.0])


def test_cumulative_energy_dominant_first_mode():
    # energy fractions 0.88, 0.04, then a slowly decaying tail
    tail = np.full(8, 0.01)
    fractions = np.concatenate([[0.88, 0.04], tail])
    cum = cumulative_energy_curve(np.sqrt(fractions))
    assert cum[0] == pytest.approx(0.88)
    assert cum[1] - cum[0] == pytest.approx(0.04)
    assert cum[-1] == 1.0


def test_centering_option(rng):
    a = rng.normal(size=(10, 8)) + 5.0
    basis = compute_pod(snap(a), 1.0, center=True)
    np.testing.assert_allclose(basis.mean, a.mean(axis=1))
    np.testing.assert_allclose(basis.approximation(), a, atol=1e-10)
    np.testing.assert_allclose(reconstruct(basis, project(basis, a[:, 3])), a[:, 3], atol=1e-10)


def test_snapshot_csv_round_trip(rng):
    s = snap(rng.normal(size=(4, 3)), times=[0.0, 0.1, 0.30000000000000004], coords=rng.normal(size=(4, 2)))
    text = snapshots_to_csv(s)
    assert text.splitlines()[0].startswith("node,x,y,0.0,0.1,")
    back = snapshots_from_csv(text)
    assert np.array_equal(back.values, s.values)
    assert np.array_equal(back.times, s.times)
    assert np.array_equal(back.node_coords, s.node_coords)
    assert snapshots_to_csv(back) == text


def test_snapshot_csv_without_coords(rng):
    s = snap(rng.normal(size=(3, 2)))
    back = snapshots_from_csv(snapshots_to_csv(s))
    assert back.node_coords is None and np.array_equal(back.values, s.values)


def test_snapshot_csv_errors():
    with pytest.raises(ShapeError):
        snapshots_from_csv("id,0.0\n0,1.0\n")
    with pytest.raises(ShapeError):
        snapshots_from_csv("node,0.0,1.0\n0,1.0\n")


def test_matrix_csv_round_trip(rng):
    m = rng.normal(size=(3, 5))
    assert np.array_equal(matrix_from_csv(matrix_to_csv(m)), m)


def test_basis_round_trip(tmp_path, rng):
    basis = compute_pod(snap(rng.normal(size=(9, 7))), 0.8)
    paths = save_basis(basis, tmp_path)
    back = load_basis(paths["header"])
    for name in ("modes", "singular_values", "temporal_coefficients"):
        assert np.array_equal(getattr(back, name), getattr(basis, name))
    assert back.n_kept == basis.n_kept and back.energy_captured == basis.energy_captured
    assert back.mean is None


elems = st.floats(-100, 100, allow_nan=False, allow_infinity=False, allow_subnormal=False)
matrices = arrays(np.float64, st.tuples(st.integers(2, 8), st.integers(2, 8)), elements=elems)


@given(matrices, st.floats(0.05, 1.0))
def test_eq21_consistency(a, thr):
    if np.max(np.abs(a)) < 1e-6:
        return
    basis = compute_pod(snap(a), thr)
    err2 = frobenius_relative_error(a, basis.approximation()) ** 2
    assert abs(err2 - (1.0 - basis.energy_captured)) <= 1e-8
    assert basis.energy_captured >= thr - 1e-12


@given(matrices, st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_threshold_monotone(a, t1, t2):
    if np.max(np.abs(a)) < 1e-6:
        return
    lo, hi = sorted((t1, t2))
    assert compute_pod(snap(a), lo).n_kept <= compute_pod(snap(a), hi).n_kept


@given(matrices, st.data())
def test_project_reconstruct_identity(a, data):
    if np.max(np.abs(a)) < 1e-6:
        return
    basis = compute_pod(snap(a), 1.0)
    alpha = np.array(data.draw(st.lists(elems, min_size=basis.n_kept, max_size=basis.n_kept)))
    np.testing.assert_allclose(project(basis, reconstruct(basis, alpha)), alpha, atol=1e-10 * max(1, np.abs(alpha).max()))


def test_pod_basis_is_plain_dataclass():
    b = PodBasis(np.eye(2), np.array([1.0, 1.0]), 2, 1.0, np.eye(2))
    assert b.mean is None and b.n_nodes == 2
