"""
Tests for the discrete Wigner function and line probabilities
"""

import warnings

import numpy as np
import pandas as pd
import pytest

from affine import relabel_points
from errors import DimensionMismatch, MissingPlane, NotPositive
from hspace import maximally_mixed, projector, random_density_matrix, random_pure_state
from polytope import corner_from_dsimplex, inscribe_dsimplex, polytope_abstract
from wigner import (
    WignerTable,
    direct_line_probabilities,
    line_probabilities,
    state_from_wigner,
    wigner_from_state,
)


@pytest.fixture
def dsimplex(quantum_polytope, field_plane):
    """Factory: dsimplex(n) over the field plane"""
    return lambda n: inscribe_dsimplex(quantum_polytope(n), field_plane(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_maximally_mixed_is_uniform(n, dsimplex):
    table = wigner_from_state(maximally_mixed(n), dsimplex(n))
    np.testing.assert_allclose(table.values, 1 / n ** 2, atol=1e-12)
    assert table.negativity() == 0.0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 8, 9])
def test_round_trip_and_marginals(n, dsimplex):
    d = dsimplex(n)
    rng = np.random.default_rng(n)
    for _ in range(100):
        rho = random_density_matrix(n, seed=rng)
        table = wigner_from_state(rho, d)
        assert table.total() == pytest.approx(1.0, abs=1e-12)
        assert state_from_wigner(table).allclose(rho, 1e-10)

        probs = line_probabilities(table)
        np.testing.assert_allclose(probs.pencil_sums(), 1.0, atol=1e-10)
        assert probs.min_value() >= -1e-10
        np.testing.assert_allclose(direct_line_probabilities(rho, d).values, probs.values, atol=1e-10)


def test_basis_state_on_qubit(dsimplex):
    d = dsimplex(2)
    table = wigner_from_state(projector(d.polytope.mubs.vector(0, 0)), d)
    assert sorted(table.values.round(12).tolist()) == [0.0, 0.0, 0.5, 0.5]


def test_qubit_state_with_negative_value(dsimplex):
    d = dsimplex(2)
    _, vectors = np.linalg.eigh(d.operators[0].matrix)
    table = wigner_from_state(projector(vectors[:, 0]), d)
    assert table.values[0] == pytest.approx((1 - np.sqrt(3)) / 4, abs=1e-12)
    assert table.min_value() < 0
    assert table.negativity() == pytest.approx((np.sqrt(3) - 1) / 4, abs=1e-12)
    assert table.total() == pytest.approx(1.0, abs=1e-12)


def test_pure_states_probabilities_from_either_side(dsimplex):
    d = dsimplex(3)
    rho = random_pure_state(3, seed=8)
    probs = line_probabilities(wigner_from_state(rho, d))
    np.testing.assert_allclose(probs.values, direct_line_probabilities(rho, d).values, atol=1e-10)


def test_non_positive_state_warns(dsimplex):
    rho = np.diag([1.5, -0.5])
    with pytest.warns(NotPositive):
        table = wigner_from_state(rho, dsimplex(2))
    assert table.total() == pytest.approx(1.0)


def test_positivity_check_can_be_skipped(dsimplex):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        wigner_from_state(np.diag([1.5, -0.5]), dsimplex(2), check_positive=False)


def test_state_dimension_must_match(dsimplex):
    with pytest.raises(DimensionMismatch):
        wigner_from_state(maximally_mixed(3), dsimplex(2))
    with pytest.raises(DimensionMismatch):
        direct_line_probabilities(maximally_mixed(3), dsimplex(2))


def test_table_without_plane():
    table = WignerTable(2, [0.25, 0.25, 0.25, 0.25])
    with pytest.raises(MissingPlane):
        state_from_wigner(table)
    with pytest.raises(MissingPlane):
        line_probabilities(table)
    assert table.grid().shape == (2, 2)


def test_table_size_checked():
    with pytest.raises(DimensionMismatch):
        WignerTable(3, np.zeros(8))


def test_grid_follows_coordinate_pencils(dsimplex):
    table = wigner_from_state(random_density_matrix(3, seed=2), dsimplex(3))
    np.testing.assert_allclose(table.grid(), table.values.reshape(3, 3))
    np.testing.assert_allclose(table.grid(1, 0), table.values.reshape(3, 3).T)


def test_abstract_polytope_round_trip(field_plane):
    d = inscribe_dsimplex(polytope_abstract(3), field_plane(3))
    rho = random_density_matrix(3, seed=6)
    assert state_from_wigner(wigner_from_state(rho, d)).allclose(rho, 1e-10)


def test_csv_export(dsimplex, tmp_path):
    d = dsimplex(3)
    probs = line_probabilities(wigner_from_state(random_density_matrix(3, seed=1), d))
    path = probs.to_csv(tmp_path / "out" / "probabilities.csv")

    frame = pd.read_csv(path)
    assert list(frame.columns) == ["pencil", "line", "basis", "vector", "probability"]
    assert len(frame) == 12
    np.testing.assert_allclose(frame.groupby("pencil")["probability"].sum().to_numpy(), 1.0, atol=1e-10)
    assert sorted(frame["line"]) == list(range(12))


def test_to_dict(dsimplex):
    data = wigner_from_state(maximally_mixed(2), dsimplex(2)).to_dict()
    assert data["n"] == 2
    np.testing.assert_allclose(data["values"], [[0.25, 0.25], [0.25, 0.25]], atol=1e-12)
    assert data["plane"]["n"] == 2


def test_positivity_tolerance(dsimplex):
    rho = np.diag([1 + 1e-6, -1e-6])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        wigner_from_state(rho, dsimplex(2), tolerance=1e-5)
    with pytest.warns(NotPositive):
        wigner_from_state(rho, dsimplex(2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_corner_state_lives_on_its_line(n, dsimplex):
    d = dsimplex(n)
    for line in range(n * n + n):
        table = wigner_from_state(d.line_projector(line), d)
        expected = np.zeros(n * n)
        expected[list(d.plane.lines[line])] = 1 / n
        np.testing.assert_allclose(table.values, expected, atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_line_supported_table_is_a_corner(n, dsimplex):
    d = dsimplex(n)
    for line in range(n * n + n):
        values = np.zeros(n * n)
        values[list(d.plane.lines[line])] = 1 / n
        rho = state_from_wigner(WignerTable(n, values, d))
        assert rho.allclose(d.line_projector(line), 1e-10)
        assert rho.allclose(corner_from_dsimplex(d, line), 1e-10)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_uniform_table_is_maximally_mixed(n, dsimplex):
    table = WignerTable(n, np.full(n * n, 1 / n ** 2), dsimplex(n))
    assert state_from_wigner(table).allclose(maximally_mixed(n), 1e-10)


@pytest.mark.parametrize("n", [3, 4])
def test_relabeling_the_plane_permutes_the_table(n, quantum_polytope, field_plane):
    poly, plane = quantum_polytope(n), field_plane(n)
    permutation = np.random.default_rng(n).permutation(n * n)
    relabeled = inscribe_dsimplex(poly, relabel_points(plane, permutation))
    rho = random_density_matrix(n, seed=3)

    original = wigner_from_state(rho, inscribe_dsimplex(poly, plane)).values
    moved = wigner_from_state(rho, relabeled).values
    np.testing.assert_allclose(moved[permutation], original, atol=1e-12)
