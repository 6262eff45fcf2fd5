"""
Tests for the SQLite field table cache
"""

import numpy as np
import pytest

from database import FieldTableCache
from errors import OrderTooLarge
from gf import field_create


@pytest.fixture
def cache(tmp_path):
    return FieldTableCache(str(tmp_path / "cache"))


def test_miss_then_hit(cache):
    assert cache.get(3, 2) is None
    built = cache.get_or_create(3, 2)
    cached = cache.get(3, 2)
    assert cached is not None
    assert np.array_equal(cached.mul_table, built.mul_table)
    assert cached.modulus == field_create(3, 2).modulus


def test_stats_and_clear(cache):
    cache.get_or_create(2, 3)
    cache.get_or_create(5)
    cache.get_or_create(5)
    stats = cache.get_stats()
    assert stats['fields_count'] == 2
    assert stats['orders'] == [8, 5]
    assert cache.clear() == 2
    assert cache.get_stats()['fields_count'] == 0


def test_cache_survives_reopening(tmp_path):
    FieldTableCache(str(tmp_path)).get_or_create(7)
    assert FieldTableCache(str(tmp_path)).get(7, 1) is not None


def test_cap_applies_on_miss(cache):
    with pytest.raises(OrderTooLarge):
        cache.get_or_create(2, 6, max_order=32)
    assert cache.get(2, 6) is None
