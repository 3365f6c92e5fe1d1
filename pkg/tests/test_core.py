import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilfibre.core import (
    Composition,
    InvalidInput,
    NeighbouringPair,
    boxes_below_band,
    build_diagram,
    diagram_of,
    neighbouring_pairs,
    rectangle_entries,
    surrounding_pair,
    true_degree,
)


compositions = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple)


def test_parse_roundtrip():
    comp = Composition.parse("2,1,1,2")
    assert comp.parts == (2, 1, 1, 2)
    assert comp.n == 6 and comp.k == 4
    assert str(comp) == "2,1,1,2"


@pytest.mark.parametrize("bad", ["", "2,,1", "a", "0,1", "-1", "1.5"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        Composition.parse(bad)


def test_empty_composition_rejected():
    with pytest.raises(InvalidInput):
        Composition(())


def test_build_diagram_121():
    d = diagram_of((1, 2, 1))
    assert d.columns == ((1,), (2, 3), (4,))


def test_build_diagram_single_column():
    d = diagram_of((1,))
    assert d.columns == ((1,),)
    assert d.dim_nilradical == 0
    assert not d.nilradical_positions()


def test_build_diagram_2112():
    assert diagram_of((2, 1, 1, 2)).columns == ((1, 2), (3,), (4,), (5, 6))


def test_pairs_121():
    d = diagram_of((1, 2, 1))
    assert neighbouring_pairs(d) == (NeighbouringPair(0, 2, 1),)


def test_pairs_all_heights_distinct():
    assert neighbouring_pairs(diagram_of((3, 2, 1))) == ()


def test_pairs_2112():
    d = diagram_of((2, 1, 1, 2))
    assert neighbouring_pairs(d) == (
        NeighbouringPair(1, 2, 1),
        NeighbouringPair(0, 3, 2),
    )


def test_boxes_below_band():
    d = diagram_of((1, 2, 1))
    assert boxes_below_band(d, NeighbouringPair(0, 2, 1)) == 1
    d = diagram_of((2, 2))
    assert boxes_below_band(d, NeighbouringPair(0, 1, 2)) == 0
    d = diagram_of((2, 1, 1, 2))
    assert boxes_below_band(d, NeighbouringPair(0, 3, 2)) == 0


def test_true_degree():
    assert true_degree(diagram_of((1, 2, 1)), NeighbouringPair(0, 2, 1)) == 2
    assert true_degree(diagram_of((2, 1, 1, 2)), NeighbouringPair(1, 2, 1)) == 1
    assert true_degree(diagram_of((2, 2)), NeighbouringPair(0, 1, 2)) == 2


def test_rectangle_and_surrounding():
    d = diagram_of((2, 1, 1, 2))
    pair = NeighbouringPair(0, 3, 2)
    assert rectangle_entries(d, pair) == frozenset({1, 2, 3, 4, 5, 6})
    assert surrounding_pair(d, 2, 1) == pair
    assert surrounding_pair(d, 2, 3) is None
    assert surrounding_pair(d, 1, 1) == NeighbouringPair(1, 2, 1)


def test_matrix_model_membership():
    d = diagram_of((1, 2, 1))
    assert d.in_nilradical((1, 2))
    assert not d.in_nilradical((2, 3))  # same Levi block
    assert d.in_levi((2, 3))
    assert d.dim_nilradical == len(d.nilradical_positions()) == 5


def test_diagram_json():
    d = diagram_of((2, 1))
    assert d.to_json() == {"parts": [2, 1], "n": 3, "columns": [[1, 2], [3]]}


@given(compositions)
@settings(max_examples=60, deadline=None)
def test_dimension_matches_position_count(parts):
    d = diagram_of(parts)
    assert d.dim_nilradical == len(d.nilradical_positions())


@given(compositions)
@settings(max_examples=60, deadline=None)
def test_degree_identity(parts):
    # degree + band boxes + height = number of boxes between the pair
    d = diagram_of(parts)
    for pair in neighbouring_pairs(d):
        boxes = sum(d.height(c) for c in range(pair.left, pair.right + 1))
        assert true_degree(d, pair) + boxes_below_band(d, pair) + pair.height == boxes


@given(compositions)
@settings(max_examples=60, deadline=None)
def test_pair_count_per_height(parts):
    d = diagram_of(parts)
    pairs = neighbouring_pairs(d)
    for height in set(parts):
        columns = sum(1 for p in parts if p == height)
        assert sum(1 for p in pairs if p.height == height) == columns - 1
