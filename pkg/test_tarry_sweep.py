"""
Tests for the orthogonal-mate census over reduced Latin squares
"""

import pytest

from errors import MubGeoError, OrderTooLarge
from latin import are_orthogonal
from tarry_sweep import TarrySweep, search_chunk


def run(order, **tarry):
    return TarrySweep({'tarry': tarry}).run(order=order, jobs=1, progress=False)


def test_order_two():
    summary = run(2)
    assert summary['squares_examined'] == 1
    assert summary['mates_found'] == 0
    assert summary['transversal_free_squares'] == 1
    assert summary['exhaustive']
    assert summary['first_mate'] is None


def test_order_three_has_a_mate():
    summary = run(3)
    assert (summary['squares_examined'], summary['mates_found']) == (1, 1)
    pair = summary['first_mate']
    assert pair['square'] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert are_orthogonal(pair['square'], pair['mate']).orthogonal


def test_order_four():
    # three reduced squares are isotopic to Z4, one to the Klein group
    summary = run(4, chunk_size=1)
    assert summary['squares_examined'] == 4
    assert summary['mates_found'] == 1
    assert summary['transversal_free_squares'] == 3


def test_chunking_does_not_change_counts():
    assert run(4, chunk_size=1) == run(4, chunk_size=256)


def test_order_five():
    summary = run(5, chunk_size=16)
    assert summary['squares_examined'] == 56
    assert summary['transversal_free_squares'] == 0
    assert 0 < summary['mates_found'] < 56


def test_search_chunk_counts():
    result = search_chunk([[[0, 1], [1, 0]], [[0, 1, 2], [1, 2, 0], [2, 0, 1]]])
    assert result['examined'] == 2
    assert result['mates'] == 1
    assert result['transversal_free'] == 1
    assert result['first_mate'][0] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_order_above_cap():
    sweep = TarrySweep({'limits': {'reduced_order_cap': 4}})
    with pytest.raises(OrderTooLarge):
        sweep.run(order=5, jobs=1, progress=False)


def test_default_order_from_config():
    sweep = TarrySweep({'tarry': {'default_order': 3, 'jobs': 1}})
    assert sweep.jobs == 1
    assert sweep.run(progress=False)['order'] == 3


@pytest.mark.slow
def test_order_six_has_no_mates():
    summary = TarrySweep().run(order=6, progress=False)
    assert summary['squares_examined'] == 9408
    assert summary['mates_found'] == 0
    assert summary['exhaustive']


@pytest.mark.parametrize("order", [0, 1])
def test_order_below_two(order):
    with pytest.raises(MubGeoError):
        TarrySweep().run(order=order, jobs=1, progress=False)
