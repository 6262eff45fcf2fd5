"""
Shared fixtures: src/ on the import path, small fields and planes, cached MUB sets
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent / "src"))

from affine import AffinePlane, plane_from_field  # noqa: E402
from gf import field_create, prime_power  # noqa: E402
from mub import mub_construct  # noqa: E402
from polytope import polytope_from_mubs  # noqa: E402

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]

# Pencils drawn as dot patterns on an n x n array; cell (row, col) is point row*n + col
ORDER_2_PENCILS = [
    [(0, 2), (1, 3)],
    [(2, 3), (0, 1)],
    [(1, 2), (0, 3)],
]

ORDER_3_PENCILS = [
    [(0, 3, 6), (1, 4, 7), (2, 5, 8)],
    [(6, 7, 8), (3, 4, 5), (0, 1, 2)],
    [(2, 4, 6), (0, 5, 7), (1, 3, 8)],
    [(1, 5, 6), (2, 3, 7), (0, 4, 8)],
]


def plane_from_pencils(n, pencils):
    lines = [line for pencil in pencils for line in pencil]
    index = [tuple(range(q * n, (q + 1) * n)) for q in range(len(pencils))]
    return AffinePlane(n, tuple(lines), tuple(index))


@pytest.fixture
def drawn_plane_2():
    return plane_from_pencils(2, ORDER_2_PENCILS)


@pytest.fixture
def drawn_plane_3():
    return plane_from_pencils(3, ORDER_3_PENCILS)


_FIELDS = {}
_MUBS = {}


def get_field(n):
    if n not in _FIELDS:
        _FIELDS[n] = field_create(*prime_power(n))
    return _FIELDS[n]


def get_mubs(n):
    if n not in _MUBS:
        _MUBS[n] = mub_construct(get_field(n))
    return _MUBS[n]


@pytest.fixture
def field():
    """Factory: field(n) -> cached GF(n)"""
    return get_field


@pytest.fixture
def mubs():
    """Factory: mubs(n) -> cached MubSet for GF(n)"""
    return get_mubs


@pytest.fixture
def quantum_polytope():
    """Factory: quantum_polytope(n) built from the cached MUBs"""
    return lambda n: polytope_from_mubs(get_mubs(n))


@pytest.fixture
def field_plane():
    """Factory: field_plane(n) -> plane GF(n)^2"""
    return lambda n: plane_from_field(get_field(n))
