from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilfibre.builder import component_tableaux
from nilfibre.core import (
    InvalidInput,
    boxes_below_band,
    diagram_of,
    neighbouring_pairs,
)
from nilfibre.invariants import (
    chain_support,
    evaluate,
    extract_invariant,
    invariant_for,
    symbolic_minor,
    vanishing_check,
    weierstrass_check,
)
from nilfibre.poly import Poly
from nilfibre.roots import excluded_roots

compositions = st.lists(st.integers(1, 3), min_size=1, max_size=5).map(tuple)


def by_stars(parts, stars):
    matches = [ct for ct in component_tableaux(parts) if ct.v_support == frozenset(stars)]
    assert len(matches) == 1
    return matches[0]


def the_pair(parts, height, index=0):
    return [p for p in neighbouring_pairs(diagram_of(parts)) if p.height == height][index]


def poly_of(monomials):
    out = Poly.zero()
    for coeff, positions in monomials:
        term = Poly.const(coeff)
        for pos in positions:
            term = term * Poly.var(pos)
        out = out + term
    return out


def test_minor_121():
    d = diagram_of((1, 2, 1))
    minor = symbolic_minor(d, the_pair((1, 2, 1), 1))
    # -a(x12 x24 + x13 x34) + a^2 x14
    assert minor.a_coefficient(1) == poly_of([(-1, [(1, 2), (2, 4)]), (-1, [(1, 3), (3, 4)])])
    assert minor.a_coefficient(2) == poly_of([(1, [(1, 4)])])
    assert minor.a_coefficient(0).is_zero()


def test_invariant_121():
    d = diagram_of((1, 2, 1))
    rec = extract_invariant(d, the_pair((1, 2, 1), 1))
    assert rec.polynomial == poly_of([(1, [(1, 2), (2, 4)]), (1, [(1, 3), (3, 4)])])
    assert rec.band_boxes == 1
    assert rec.degree == 2


def test_minor_22_hand_determinant():
    d = diagram_of((2, 2))
    minor = symbolic_minor(d, the_pair((2, 2), 2))
    want = poly_of([(1, [(1, 3), (2, 4)]), (-1, [(1, 4), (2, 3)])])
    assert minor == want or minor == -want
    rec = extract_invariant(d, the_pair((2, 2), 2))
    assert rec.polynomial == want  # sign normalized on the least monomial


def test_minor_11_single_cell():
    d = diagram_of((1, 1))
    rec = extract_invariant(d, the_pair((1, 1), 1))
    assert rec.polynomial == poly_of([(1, [(1, 2)])])
    assert rec.band_boxes == 0 and rec.degree == 1


def test_invariant_2112_inner_pair():
    d = diagram_of((2, 1, 1, 2))
    rec = extract_invariant(d, the_pair((2, 1, 1, 2), 1))
    assert rec.polynomial == poly_of([(1, [(3, 4)])])
    assert rec.degree == 1


def test_chain_support_examples():
    d = diagram_of((1, 2, 1))
    assert chain_support(d, the_pair((1, 2, 1), 1)) == frozenset(
        {frozenset({(1, 2), (2, 4)}), frozenset({(1, 3), (3, 4)})}
    )
    d = diagram_of((2, 2))
    assert chain_support(d, the_pair((2, 2), 2)) == frozenset(
        {frozenset({(1, 3), (2, 4)}), frozenset({(1, 4), (2, 3)})}
    )
    d = diagram_of((1, 1))
    assert chain_support(d, the_pair((1, 1), 1)) == frozenset({frozenset({(1, 2)})})


@given(compositions)
@settings(max_examples=25, deadline=None)
def test_chain_engine_matches_determinant(parts):
    d = diagram_of(parts)
    for pair in neighbouring_pairs(d):
        rec = invariant_for(parts, pair)
        assert rec.polynomial.monomial_support() == chain_support(d, pair)


@given(compositions)
@settings(max_examples=25, deadline=None)
def test_minor_valuation(parts):
    d = diagram_of(parts)
    for pair in neighbouring_pairs(d):
        minor = symbolic_minor(d, pair)
        lo, _ = minor.a_degree_range()
        assert lo == boxes_below_band(d, pair)


@given(compositions)
@settings(max_examples=20, deadline=None)
def test_full_identity_gives_same_invariant(parts):
    d = diagram_of(parts)
    for pair in neighbouring_pairs(d):
        plain = extract_invariant(d, pair)
        full = extract_invariant(d, pair, symbolic_minor(d, pair, full_identity=True))
        assert plain.polynomial == full.polynomial


def test_evaluate_full_and_partial():
    d = diagram_of((1, 2, 1))
    rec = extract_invariant(d, the_pair((1, 2, 1), 1))
    assert evaluate(rec.polynomial, {(1, 2): 1, (2, 4): 1, (1, 3): 0, (3, 4): 0}) == 1
    assert evaluate(rec.polynomial, {v: 0 for v in rec.polynomial.variables()}) == 0
    # zeroing the starred coordinates of the canonical tableau kills it
    assert evaluate(rec.polynomial, {(2, 4): 0, (3, 4): 0}) == 0
    partial = evaluate(rec.polynomial, {(2, 4): 0})
    assert isinstance(partial, Poly)
    assert partial == poly_of([(1, [(1, 3), (3, 4)])])


def test_evaluate_rejects_unknown_variable():
    d = diagram_of((1, 2, 1))
    rec = extract_invariant(d, the_pair((1, 2, 1), 1))
    with pytest.raises(InvalidInput):
        evaluate(rec.polynomial, {(1, 4): 1})


def test_vanishing_2112():
    ct = by_stars((2, 1, 1, 2), {(3, 4), (3, 6)})
    report = vanishing_check(ct, excluded_roots(ct))
    assert report.ok
    # zeroing the three exclusions kills both generators by hand too
    d = ct.diagram
    inv = extract_invariant(d, the_pair((2, 1, 1, 2), 2))
    zeroed = inv.polynomial.substitute({p: 0 for p in [(3, 4), (3, 6), (4, 6)]})
    assert zeroed.is_zero()


def test_vanishing_212121_all_five():
    for ct in component_tableaux((2, 1, 2, 1, 2, 1)):
        assert vanishing_check(ct, excluded_roots(ct)).ok


def test_vanishing_vacuous_without_pairs():
    (ct,) = component_tableaux((3, 2, 1))
    assert vanishing_check(ct, excluded_roots(ct)).ok


def test_nonvanishing_witness_reported():
    ct = by_stars((2, 1, 1, 2), {(3, 4), (3, 6)})
    trimmed = excluded_roots(ct)
    # drop one exclusion: the generators must survive and name a witness
    smaller = frozenset({(3, 4)})
    from nilfibre.roots import ExcludedRootSet

    fake = ExcludedRootSet(ct.diagram, trimmed.by_generator, smaller, ct.diagram.nilradical_positions() - smaller)
    report = vanishing_check(ct, fake)
    assert not report.ok
    failing = [r for r in report.results if not r.global_ok]
    assert failing and all(r.global_witness for r in failing)


def test_randomized_engine_agrees():
    rng = Random(11)
    for parts in [(2, 1, 1, 2), (1, 2, 1, 2), (2, 1, 1, 1, 2)]:
        for ct in component_tableaux(parts):
            roots = excluded_roots(ct)
            assert vanishing_check(ct, roots, symbolic_max_n=0, rng=rng).ok


def test_randomized_engine_detects_nonzero():
    rng = Random(5)
    ct = by_stars((2, 1, 1, 2), {(3, 4), (3, 6)})
    from nilfibre.roots import ExcludedRootSet

    smaller = frozenset({(3, 4)})
    fake = ExcludedRootSet(ct.diagram, (), smaller, ct.diagram.nilradical_positions() - smaller)
    report = vanishing_check(ct, fake, symbolic_max_n=0, rng=rng)
    assert not report.ok


def test_weierstrass_values_1212():
    upper = by_stars((1, 2, 1, 2), {(2, 4), (2, 6)})
    report = weierstrass_check(upper)
    assert report.ok
    assert {r.variable for r in report.results} == {(2, 4), (2, 6)}
    lower = by_stars((1, 2, 1, 2), {(2, 4), (3, 4)})
    report = weierstrass_check(lower)
    assert report.ok
    assert {r.variable for r in report.results} == {(2, 4), (3, 4)}


def test_weierstrass_121():
    (ct,) = component_tableaux((1, 2, 1))
    report = weierstrass_check(ct)
    assert report.ok
    assert [r.variable for r in report.results] == [(2, 4)]


def test_weierstrass_21112_middle():
    ct = by_stars((2, 1, 1, 1, 2), {(3, 4), (4, 5), (3, 5)})
    report = weierstrass_check(ct)
    assert report.ok
    assert {r.variable for r in report.results} == {(3, 4), (4, 5), (3, 5)}


def test_exceptional_constituents_carry_exclusions(small_compositions):
    # a chain monomial that zig-zags in the amalgamated tableau always
    # contains an excluded coordinate
    from nilfibre.roots import hatted_tableau, excluded_from_word

    for parts in small_compositions:
        d = diagram_of(parts)
        for ct in component_tableaux(parts):
            for pair in neighbouring_pairs(d):
                ht = hatted_tableau(ct, pair)
                place = {}
                for c, col in enumerate(ht.columns):
                    for entry in col:
                        place[entry] = c
                excl = excluded_from_word(ht.word(), d)
                for monomial in chain_support(d, pair):
                    zigzag = any(place[i] >= place[j] for i, j in monomial)
                    if zigzag:
                        assert monomial & excl, (parts, pair, monomial)


def test_max_height_fast_path(small_compositions):
    # pairs of maximal height within their interval vanish structurally once
    # the penetrating trail's primary exclusions are zeroed; the fast path
    # must agree with the symbolic engine on every instance
    from nilfibre.invariants import max_height_structural_vanishing
    from nilfibre.roots import penetrating_string
    from nilfibre.roots import _generator_exclusions

    checked = 0
    for parts in small_compositions:
        d = diagram_of(parts)
        for ct in component_tableaux(parts):
            for pair in neighbouring_pairs(d):
                verdict = max_height_structural_vanishing(ct, pair)
                if verdict is None:
                    continue
                rec = penetrating_string(ct, pair)
                primary = frozenset(
                    p
                    for m in rec.steps
                    for p in _generator_exclusions(d, m.entry, m.star_targets, m.target_col).primary
                )
                symbolic = invariant_for(parts, pair).polynomial.substitute(
                    {p: 0 for p in primary}
                ).is_zero()
                assert verdict is True and symbolic is True, (parts, pair)
                checked += 1
    assert checked > 50
