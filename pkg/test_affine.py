"""
Tests for affine planes: axioms, field and MOLS constructions, MOLS extraction
"""

import numpy as np
import pytest

from affine import (
    AffinePlane,
    plane_from_field,
    plane_from_mols,
    plane_to_mols,
    relabel_points,
    same_incidence,
    verify_axioms,
)
from conftest import PRIME_POWERS
from errors import IndexOutOfRange, InvalidPlane, MalformedIncidence, SamePencil, WrongCount
from latin import LatinSquare, MolsSet, cyclic_square, mols_from_field, relabel_symbols


def test_drawn_planes_satisfy_axioms(drawn_plane_2, drawn_plane_3):
    for plane in (drawn_plane_2, drawn_plane_3):
        report = verify_axioms(plane)
        assert report.passed, report.failures()


@pytest.mark.parametrize("n", PRIME_POWERS)
def test_field_plane_counts(n, field_plane):
    plane = field_plane(n)
    assert plane.num_points == n * n
    assert len(plane.lines) == n * n + n
    assert len(plane.pencils) == n + 1
    assert all(len(line) == n for line in plane.lines)
    assert (plane.incidence.sum(axis=0) == n + 1).all()
    assert verify_axioms(plane).passed


def test_order_three_field_plane_matches_drawing(field_plane, drawn_plane_3):
    assert same_incidence(field_plane(3), drawn_plane_3)


def test_order_two_plane_is_unique_up_to_labels(field_plane, drawn_plane_2):
    assert same_incidence(field_plane(2), drawn_plane_2)


def test_moving_a_point_breaks_a1(field_plane):
    data = field_plane(3).to_dict()
    # the line y = 0 is (0, 3, 6); move its point 0 to point 1
    index = data["pencils"][1][0]
    assert data["lines"][index] == [0, 3, 6]
    data["lines"][index] = [1, 3, 6]
    report = verify_axioms(AffinePlane.from_dict(data))
    assert not report.passed
    assert not report.a1.passed
    assert len(report.a1.witness) == 2


def test_missing_line_breaks_counting(field_plane):
    plane = field_plane(3)
    lines = plane.lines[:-1]
    pencils = plane.pencils[:-1] + (plane.pencils[-1][:-1],)
    report = verify_axioms(AffinePlane(3, lines, pencils))
    assert not report.passed
    assert "counting" in report.failures()


def test_single_line_breaks_a3():
    plane = AffinePlane(2, ((0, 1, 2, 3),), ((0,),))
    report = verify_axioms(plane)
    assert not report.a3.passed


@pytest.mark.parametrize("lines, pencils", [
    ((), ((0,),)),
    (((0, 1), (2, 3)), ()),
    (((0, 0), (2, 3)), ((0, 1),)),
    (((0, 4), (2, 3)), ((0, 1),)),
    (((0, 1), (2, 3)), ((0, 2),)),
])
def test_malformed_incidence(lines, pencils):
    with pytest.raises(MalformedIncidence):
        AffinePlane(2, lines, pencils)


def test_from_dict_requires_keys():
    with pytest.raises(MalformedIncidence):
        AffinePlane.from_dict({"n": 2, "lines": []})


def test_line_queries(drawn_plane_3):
    plane = drawn_plane_3
    assert plane.lines_through(4) == (1, 4, 6, 11)
    assert plane.line_through(0, 2) == 7
    assert plane.position_in_pencil(7) == (2, 1)
    with pytest.raises(IndexOutOfRange):
        plane.line_through(9, 0)
    with pytest.raises(IndexOutOfRange):
        plane.line_through(0, 4)


@pytest.mark.parametrize("n", PRIME_POWERS)
def test_mols_round_trip(n, field):
    mols = mols_from_field(field(n))
    recovered = plane_to_mols(plane_from_mols(mols))
    assert len(recovered) == n - 1
    for original, back in zip(mols, recovered):
        assert relabel_symbols(original) == relabel_symbols(back)


def test_drawn_plane_gives_orthogonal_pair(drawn_plane_3):
    # pencil 0 (drawn columns) indexes rows, pencil 1 (drawn rows, bottom first) indexes columns
    mols = plane_to_mols(drawn_plane_3)
    assert len(mols) == 2
    assert mols[0].rows() == ((0, 2, 1), (1, 0, 2), (2, 1, 0))
    assert mols[1].rows() == ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_field_plane_and_mols_plane_agree(n, field, field_plane):
    assert same_incidence(plane_from_mols(mols_from_field(field(n))), field_plane(n))


def test_other_coordinate_pencils(field_plane):
    plane = field_plane(4)
    mols = plane_to_mols(plane, row_pencil=2, col_pencil=4)
    assert len(mols) == 3


def test_same_pencil_rejected(field_plane):
    with pytest.raises(SamePencil):
        plane_to_mols(field_plane(3), 1, 1)


def test_invalid_plane_rejected():
    # order 2 without its third pencil: points 0 and 3 share no line
    plane = AffinePlane(2, ((0, 1), (2, 3), (0, 2), (1, 3)), ((0, 1), (2, 3)))
    with pytest.raises(InvalidPlane):
        plane_to_mols(plane, 0, 1)


def test_plane_from_mols_needs_full_family():
    with pytest.raises(WrongCount):
        plane_from_mols(MolsSet(5, (cyclic_square(5),)))


def test_plane_from_order_two_square():
    plane = plane_from_mols([LatinSquare([[0, 1], [1, 0]])])
    assert verify_axioms(plane).passed


def test_relabeling_preserves_axioms(field_plane):
    plane = field_plane(4)
    rng = np.random.default_rng(11)
    permutation = rng.permutation(16)
    relabeled = relabel_points(plane, permutation)
    assert verify_axioms(relabeled).passed
    assert relabeled.lines[5] == tuple(sorted(int(permutation[p]) for p in plane.lines[5]))
    assert same_incidence(relabel_points(plane, range(16)), plane)


def test_relabel_requires_permutation(field_plane):
    with pytest.raises(MalformedIncidence):
        relabel_points(field_plane(2), [0, 0, 1, 2])


def test_incidence_matrix_is_a_copy(field_plane):
    plane = field_plane(2)
    matrix = plane.incidence_matrix()
    matrix[0, 0] = 7
    assert plane.incidence[0, 0] in (0, 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_random_point_moves_are_detected(n, field_plane):
    plane = field_plane(n)
    rng = np.random.default_rng(n)
    for _ in range(300):
        lines = [list(line) for line in plane.lines]
        index = int(rng.integers(len(lines)))
        line = lines[index]
        outside = [p for p in plane.points if p not in line]
        line[int(rng.integers(n))] = int(rng.choice(outside))
        report = verify_axioms(AffinePlane(n, lines, plane.pencils))
        assert not report.passed, f"moving a point on line {index} went unnoticed"


@pytest.mark.parametrize("n", PRIME_POWERS)
def test_lines_of_different_pencils_meet_once(n, field_plane):
    plane = field_plane(n)
    for q, first in enumerate(plane.pencils):
        for second in plane.pencils[q + 1:]:
            for a in first:
                for b in second:
                    assert len(set(plane.lines[a]) & set(plane.lines[b])) == 1


def test_lines_of_one_pencil_are_parallel(drawn_plane_3):
    for pencil in drawn_plane_3.pencils:
        for i, a in enumerate(pencil):
            for b in pencil[i + 1:]:
                assert not set(drawn_plane_3.lines[a]) & set(drawn_plane_3.lines[b])
