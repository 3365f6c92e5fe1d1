from itertools import combinations
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilfibre.analysis import (
    covering_check,
    injectivity_witness,
    invariant_variable_disjointness,
    jordan_type,
    label_partition,
    orbit_dimension,
    orbital_variety_test,
    tangent_dimension,
)
from nilfibre.builder import component_tableaux
from nilfibre.core import InvalidInput, diagram_of, neighbouring_pairs

compositions = st.lists(st.integers(1, 3), min_size=1, max_size=5).map(tuple)


def by_stars(parts, stars):
    matches = [ct for ct in component_tableaux(parts) if ct.v_support == frozenset(stars)]
    assert len(matches) == 1
    return matches[0]


def one_matrix(n, support):
    mat = [[0] * n for _ in range(n)]
    for i, j in support:
        mat[i - 1][j - 1] = 1
    return mat


def test_covering_2112():
    ct = by_stars((2, 1, 1, 2), {(3, 4), (3, 6)})
    part = label_partition(ct)
    assert part.z_set == {(4, 6)}
    report = covering_check(ct)
    assert report.ok and report.labels_ok and report.unique_row_cover
    assert (4, 5) in ct.e_support  # the cover sits left of (4,6) in row 4


def test_covering_superfluous_secondary():
    # the superfluous secondary exclusion (1,3) is covered by the one at (1,2)
    ct = by_stars((1, 2, 1, 2), {(2, 4), (3, 4)})
    part = label_partition(ct)
    assert (1, 3) in part.z_set
    assert (1, 2) in ct.e_support
    assert covering_check(ct).ok


def test_covering_vacuous():
    (ct,) = component_tableaux((3, 2, 1))
    report = covering_check(ct)
    assert report.ok and not report.uncovered


def test_covering_small_sweep(small_compositions):
    for parts in small_compositions:
        for ct in component_tableaux(parts):
            report = covering_check(ct)
            assert report.ok and report.labels_ok and report.unique_row_cover, parts


def test_tangent_2112():
    ct = by_stars((2, 1, 1, 2), {(3, 4), (3, 6)})
    report = tangent_dimension(ct)
    assert report.dim_nilradical == 13
    assert report.generators == 2
    assert report.rank_u_plus_ne == 11
    assert report.ok


def test_tangent_trivial():
    (ct,) = component_tableaux((3, 2, 1))
    report = tangent_dimension(ct)
    assert report.generators == 0
    assert report.rank_u_plus_ne == report.dim_nilradical
    assert report.ok


def test_tangent_21112_all_three():
    for ct in component_tableaux((2, 1, 1, 1, 2)):
        report = tangent_dimension(ct)
        assert report.rank_u_plus_ne == report.dim_nilradical - 3
        assert report.ok


def test_tangent_small_sweep(small_compositions):
    for parts in small_compositions:
        for ct in component_tableaux(parts):
            assert tangent_dimension(ct).ok, parts


def test_jordan_types_21112():
    # chains (1,3,5,6),(2,4),(7) against (3,2,2) for the middle choice
    ts = component_tableaux((2, 1, 1, 1, 2))
    types = {}
    for ct in ts:
        entry = ct.pair_entry()[[p for p in neighbouring_pairs(ct.diagram) if p.height == 2][0]]
        types[entry] = jordan_type(one_matrix(7, ct.e_support))
    assert types[4] == (4, 2, 1)
    assert types[3] == (3, 2, 2)
    assert orbit_dimension(7, types[4]) == 2 * (21 - 4)
    assert orbit_dimension(7, types[3]) == 2 * (21 - 6)


def test_jordan_zero_matrix():
    assert jordan_type([[0] * 4 for _ in range(4)]) == (1, 1, 1, 1)


def test_jordan_rejects_non_strict():
    with pytest.raises(InvalidInput):
        jordan_type([[1, 0], [0, 0]])
    with pytest.raises(InvalidInput):
        jordan_type([[0, 0], [1, 0]])


def test_orbital_21112():
    statuses = []
    for ct in component_tableaux((2, 1, 1, 1, 2)):
        report = orbital_variety_test(ct, rng=Random(0))
        statuses.append(report.status)
        if report.status == "orbital":
            assert report.complement_bracket_closed
    assert sorted(statuses) == ["not_orbital", "not_orbital", "orbital"]


def test_orbital_trivial():
    (ct,) = component_tableaux((1,))
    assert orbital_variety_test(ct, rng=Random(0)).status == "trivial"


def test_injectivity_2112():
    a, b = component_tableaux((2, 1, 1, 2))
    w = injectivity_witness(a, b)
    assert w.ok
    assert w.exchanged == (2, 3)
    assert {w.line_low, w.line_rightmost} == {(2, 4), (3, 6)}


def test_injectivity_321321():
    parts = (3, 2, 1, 3, 2, 1)
    pair = [p for p in neighbouring_pairs(diagram_of(parts)) if p.height == 2][0]
    ts = component_tableaux(parts)
    c5 = next(t for t in ts if t.pair_entry()[pair] == 5)
    c8 = next(t for t in ts if t.pair_entry()[pair] == 8)
    w = injectivity_witness(c5, c8)
    assert w.ok
    assert w.line_rightmost == (8, 11)


def test_injectivity_321312():
    parts = (3, 2, 1, 3, 1, 2)
    pair = [p for p in neighbouring_pairs(diagram_of(parts)) if p.height == 2][0]
    ts = component_tableaux(parts)
    c5 = next(t for t in ts if t.pair_entry()[pair] == 5)
    c8 = next(t for t in ts if t.pair_entry()[pair] == 8)
    w = injectivity_witness(c5, c8)
    assert w.ok
    assert w.line_rightmost == (8, 10)


def test_injectivity_rejects_same_data():
    a, b = component_tableaux((2, 1, 1, 2))
    with pytest.raises(InvalidInput):
        injectivity_witness(a, a)


def test_injectivity_small_sweep(small_compositions):
    for parts in small_compositions:
        ts = component_tableaux(parts)
        for a, b in combinations(ts, 2):
            assert injectivity_witness(a, b).ok, parts


def test_partition_disjoint_variables(small_compositions):
    for parts in small_compositions:
        if tuple(sorted(parts, reverse=True)) == parts:
            assert invariant_variable_disjointness(diagram_of(parts)), parts


@given(compositions)
@settings(max_examples=25, deadline=None)
def test_dimension_report_consistency(parts):
    for ct in component_tableaux(parts):
        report = tangent_dimension(ct)
        assert report.ok
        assert report.rank_u_plus_ne + len(ct.v_support) == report.dim_nilradical
