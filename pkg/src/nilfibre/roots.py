"""Excluded roots of a component tableau, via shifted tableaux and word forms.

Each starred line group (i, j-list) rewrites the diagram: the partial column
j-list is placed directly below i, and the part of i's column hanging below i
is displaced leftward, partial column by partial column, skipping columns
shorter than i's row, until the first column whose height equals that row.
Reading the rewritten columns bottom to top, left to right, gives a
permutation word; a nilradical position (i', j') is excluded when i' occurs
after j' in that word.  Exclusions whose larger entry lies in the j-list are
primary, the rest secondary.

The penetrating trail of a neighbouring pair is the trail of the entry that
consumed the pair; its lowering events, kept up to and including the first
landing below the pair's height, drive both the specific-vanishing set and
the amalgamated (hatted) tableau whose degree drops by exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    ConstructionViolation,
    Diagram,
    InternalConsistencyError,
    InvalidInput,
    NeighbouringPair,
    Pos,
    interval_entries,
    true_degree,
)
from .builder import ComponentTableau, Move


def word_form(columns) -> tuple[int, ...]:
    """Read columns bottom to top, leftmost first."""
    word = []
    for col in columns:
        word.extend(reversed(col))
    if len(set(word)) != len(word):
        raise InvalidInput("word form requires pairwise distinct entries")
    return tuple(word)


def excluded_from_word(word: tuple[int, ...], diagram: Diagram) -> frozenset[Pos]:
    """Nilradical positions (i, j), i < j, with i after j in the word.

    Pairs whose entries share a column of the diagram lie in the Levi factor
    and are dropped.
    """
    index = {entry: k for k, entry in enumerate(word)}
    out = set()
    for j, pos_j in index.items():
        col_j = diagram.column_of(j)
        for i in range(1, j):
            if index.get(i, -1) > pos_j and diagram.column_of(i) < col_j:
                out.add((i, j))
    return frozenset(out)


@dataclass(frozen=True)
class ShiftedTableau:
    """Columns after placing a partial column below an entry, with the
    leftward displacements that re-balancing forces."""

    diagram: Diagram
    entry: int
    j_list: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]
    displaced: tuple[int, ...]  # entries moved by the secondary shifting
    anchor_col: int  # column of ``entry`` in the diagram
    leftmost_col: int  # column where the displacement chain stops

    def word(self) -> tuple[int, ...]:
        return word_form(self.columns)


def _place_below(diagram: Diagram, cols: list[list[int]], entry: int, partial: list[int]):
    """Put ``partial`` directly below ``entry``; push the displaced column
    tails leftward until a column of matching height absorbs them.

    Returns (anchor column, leftmost column, displaced entries)."""
    h = diagram.column_of(entry)
    f = diagram.row_of(entry)
    tail = cols[h][f:]
    cols[h] = cols[h][:f] + partial
    if not tail:
        return h, h, ()
    g = None
    for c in range(h, -1, -1):
        if diagram.height(c) == f:
            g = c
            break
    if g is None:
        raise ConstructionViolation(
            f"no column of height {f} at or left of entry {entry}'s column"
        )
    chain = [c for c in range(g, h) if diagram.height(c) > f]
    displaced: list[int] = []
    carry = tail
    for c in reversed(chain):
        displaced.extend(carry)
        carry, cols[c] = cols[c][f:], cols[c][:f] + carry
    displaced.extend(carry)
    cols[g] = cols[g] + carry
    return h, g, tuple(displaced)


def shifted_tableau(diagram: Diagram, entry: int, j_list: tuple[int, ...]) -> ShiftedTableau:
    """The rewritten diagram for one starred group (entry, j-list)."""
    if not j_list:
        raise InvalidInput("empty j-list")
    cols = [list(col) for col in diagram.columns]
    source = diagram.column_of(j_list[0])
    if tuple(cols[source][-len(j_list):]) != tuple(j_list):
        raise ConstructionViolation(
            f"{j_list} is not the bottom of column {source + 1}"
        )
    del cols[source][-len(j_list):]
    anchor, leftmost, displaced = _place_below(diagram, cols, entry, list(j_list))
    return ShiftedTableau(
        diagram,
        entry,
        tuple(j_list),
        tuple(tuple(c) for c in cols),
        displaced,
        anchor,
        leftmost,
    )


@dataclass(frozen=True)
class GeneratorExclusions:
    entry: int
    j_list: tuple[int, ...]
    target_col: int
    primary: frozenset[Pos]
    secondary: frozenset[Pos]

    @property
    def all(self) -> frozenset[Pos]:
        return self.primary | self.secondary


@dataclass(frozen=True)
class ExcludedRootSet:
    diagram: Diagram
    by_generator: tuple[GeneratorExclusions, ...]
    excluded: frozenset[Pos]  # union over generators
    u_support: frozenset[Pos]  # nilradical minus excluded

    def to_json(self) -> dict:
        return {
            "generators": [
                {
                    "generator": {"i": g.entry, "jList": list(g.j_list)},
                    "excluded": [
                        {"i": i, "j": j, "kind": kind}
                        for kind, group in (("primary", g.primary), ("secondary", g.secondary))
                        for i, j in sorted(group)
                    ],
                }
                for g in self.by_generator
            ],
            "excluded": [list(p) for p in sorted(self.excluded)],
            "support": [list(p) for p in sorted(self.u_support)],
        }


def _generator_exclusions(diagram: Diagram, entry: int, j_list: tuple[int, ...], target_col: int) -> GeneratorExclusions:
    shifted = shifted_tableau(diagram, entry, j_list)
    excluded = excluded_from_word(shifted.word(), diagram)
    j_set = set(j_list)
    displaced = set(shifted.displaced)
    primary = frozenset(p for p in excluded if p[1] in j_set)
    secondary = excluded - primary
    stray = {p for p in secondary if p[1] not in displaced}
    if stray:
        raise InternalConsistencyError(f"secondary exclusions off the displaced entries: {stray}")
    return GeneratorExclusions(entry, j_list, target_col, primary, secondary)


@lru_cache(maxsize=None)
def excluded_roots(ct: ComponentTableau) -> ExcludedRootSet:
    """Union of the per-generator exclusions; the complement spans the
    subalgebra attached to the tableau."""
    diagram = ct.diagram
    gens = tuple(
        _generator_exclusions(diagram, m.entry, m.star_targets, m.target_col)
        for m in ct.moves
    )
    union = frozenset(p for g in gens for p in g.all)
    return ExcludedRootSet(
        diagram,
        gens,
        union,
        diagram.nilradical_positions() - union,
    )


def bracket_closure_violations(diagram: Diagram, support: frozenset[Pos]) -> list[tuple[Pos, Pos, Pos]]:
    """Composable support pairs whose product escapes ``support``."""
    heads: dict[int, list[Pos]] = {}
    for pos in support:
        heads.setdefault(pos[0], []).append(pos)
    bad = []
    for (i, j) in support:
        for (jj, k) in heads.get(j, ()):
            if (i, k) not in support:
                bad.append(((i, j), (jj, k), (i, k)))
    return bad


def levi_lowering_violations(diagram: Diagram, support: frozenset[Pos]) -> list[tuple[Pos, Pos]]:
    """Positions whose image under a simple Levi lowering leaves the support.

    The lowering attached to adjacent entries (p, p+1) of one column sends
    (p, j) to (p+1, j) and (i, p+1) to (i, p); images inside the Levi are
    vacuous.
    """
    simple = [
        p
        for p in range(1, diagram.n)
        if diagram.column_of(p) == diagram.column_of(p + 1)
    ]
    bad = []
    for p in simple:
        for (i, j) in support:
            if i == p and p + 1 < j and (p + 1, j) not in support:
                bad.append(((i, j), (p + 1, j)))
            if j == p + 1 and i < p:
                if diagram.in_nilradical((i, p)) and (i, p) not in support:
                    bad.append(((i, j), (i, p)))
    return bad


@dataclass(frozen=True)
class PenetrationRecord:
    pair: NeighbouringPair
    entry: int
    steps: tuple[Move, ...]  # lowering events up to and including penetration
    landing_row: int  # first row below the band that the trail reaches
    halted: bool  # the trail continues past the recorded steps
    excluded: frozenset[Pos]  # exclusions carried by the recorded steps only


def penetrating_string(ct: ComponentTableau, pair: NeighbouringPair) -> PenetrationRecord:
    """The unique trail that consumed ``pair``, halted just after it first
    drops below the pair's height."""
    entry = ct.pair_entry()[pair]
    events = sorted((m for m in ct.moves if m.entry == entry), key=lambda m: m.target_col)
    box = ct.diagram.box_of(entry)
    if not (pair.left <= box[0] < pair.right and box[1] <= pair.height):
        raise ConstructionViolation(
            f"trail of {entry} does not start inside the rectangle of {pair}"
        )
    steps = []
    landing = None
    for move in events:
        steps.append(move)
        if move.landing_row > pair.height:
            landing = move.landing_row
            break
    if landing is None:
        raise ConstructionViolation(f"trail of {entry} never penetrates below row {pair.height}")
    if not (pair.left < steps[-1].target_col <= pair.right):
        raise ConstructionViolation(f"penetration of {entry} lands outside ]C,C'] of {pair}")
    excluded = frozenset(
        p
        for m in steps
        for p in _generator_exclusions(ct.diagram, m.entry, m.star_targets, m.target_col).all
    )
    return PenetrationRecord(
        pair,
        entry,
        tuple(steps),
        landing,
        halted=len(steps) < len(events),
        excluded=excluded,
    )


def special_star_line(ct: ComponentTableau, pair: NeighbouringPair) -> Pos:
    """The one starred constituent of the disjoint composite-line family of
    ``pair``: from the penetrating entry to the box of the target column at
    row min(height, original height)."""
    record = penetrating_string(ct, pair)
    move = record.steps[-1]
    h0 = ct.diagram.height(move.target_col)
    j = ct.diagram.columns[move.target_col][min(pair.height, h0) - 1]
    return (record.entry, j)


@dataclass(frozen=True)
class HattedTableau:
    diagram: Diagram
    pair: NeighbouringPair
    entry: int
    columns: tuple[tuple[int, ...], ...]
    stacked: tuple[int, ...]  # the amalgamated partial column, top down
    anchor_col: int
    leftmost_col: int
    virtual_degree: int

    def word(self) -> tuple[int, ...]:
        return word_form(self.columns)


def hatted_tableau(ct: ComponentTableau, pair: NeighbouringPair) -> HattedTableau:
    """Amalgamate the penetrating trail's partial columns below its entry and
    check the height ledger plus the degree drop."""
    diagram = ct.diagram
    record = penetrating_string(ct, pair)
    cols = [list(col) for col in diagram.columns]
    stacked: list[int] = []
    for move in record.steps:
        m = len(move.star_targets)
        if tuple(cols[move.target_col][-m:]) != tuple(move.star_targets):
            raise InternalConsistencyError("star targets are not the column bottom")
        del cols[move.target_col][-m:]
        stacked.extend(move.star_targets)
    if any(a >= b for a, b in zip(stacked, stacked[1:])):
        raise InternalConsistencyError("amalgamated column is not increasing downward")
    anchor, leftmost, _ = _place_below(diagram, cols, record.entry, stacked)

    heights = [len(c) for c in cols]
    f = diagram.row_of(record.entry)
    m_hat = len(stacked)
    for move in record.steps:
        expected = diagram.height(move.target_col) - len(move.star_targets)
        if move.target_col != anchor and heights[move.target_col] != expected:
            raise InternalConsistencyError("target column height off after removal")
    if heights[anchor] != diagram.height(leftmost) + m_hat:
        raise InternalConsistencyError("anchor height differs from base height plus stack")
    if heights[anchor] != record.landing_row:
        raise InternalConsistencyError("anchor height differs from the penetration row")
    chain = [c for c in range(leftmost, anchor) if diagram.height(c) > f]
    for lower, upper in zip([leftmost] + chain, chain + [anchor]):
        if upper == anchor:
            continue
        if heights[lower] != diagram.height(upper):
            raise InternalConsistencyError("displacement chain heights are not permuted")

    inside = set(interval_entries(diagram, pair))
    s = pair.height
    virtual = sum(min(s, sum(1 for e in col if e in inside)) for col in cols) - s
    if virtual != true_degree(diagram, pair) - 1:
        raise InternalConsistencyError(
            f"virtual degree {virtual} != true degree - 1 for {pair}"
        )
    return HattedTableau(
        diagram,
        pair,
        record.entry,
        tuple(tuple(c) for c in cols),
        tuple(stacked),
        anchor,
        leftmost,
        virtual,
    )


def left_contribution_preserved(ht: HattedTableau) -> bool:
    """Diagnostic: per-column counts of entries strictly left of the pair are
    a permutation of the original ones."""
    diagram = ht.diagram
    boundary = diagram.columns[ht.pair.left][0]
    before = sorted(sum(1 for e in col if e < boundary) for col in diagram.columns)
    after = sorted(sum(1 for e in col if e < boundary) for col in ht.columns)
    return before == after
