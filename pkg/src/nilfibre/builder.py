"""Enumeration of the extended tableaux and their decorated, collapsed forms.

Starting from the filled diagram, rows are completed one at a time.  At the
stage completing row T+1 an entry may be lowered from row t' <= T of a column
into the first empty box of its right neighbour, provided that box sits in
row T+1 and that for every height s in [t', T] a free neighbouring pair of
that height surrounds the two adjacent columns; all those pairs are consumed
by the move.  Entries that remain in row T+1 afterwards slide right, one
column at a time, into first-empty boxes.  Each compatible set of lowering
choices opens one branch; a branch survives only when every neighbouring
pair has been consumed exactly once by the time the tableau stabilizes.

Lowered entries are joined by a vertical line labelled ``*`` to the bottom
original entries of the column they enter; entries whose trail ends at a
column are joined by a line labelled ``1`` to the highest not-yet-used
original entry of the next column; repeated occurrences of one value are
joined by neutral lines.  Collapsing re-anchors the labelled lines to the
original boxes of their endpoint entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    ConstructionViolation,
    Diagram,
    NeighbouringPair,
    Pos,
    diagram_of,
    neighbouring_pairs,
    surrounding_pair,
)

STAR = "*"
ONE = "1"
NEUTRAL = "neutral"


@dataclass(frozen=True)
class Batch:
    """Rightmost occurrences of each value in rows <= height, columns [C, C')."""

    pair: NeighbouringPair
    height: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class Move:
    """One lowering: ``entry`` drops from (src_row, src_col) into the first
    empty box of src_col+1, consuming one neighbouring pair per descended row."""

    stage: int
    entry: int
    src_col: int
    src_row: int
    target_col: int
    landing_row: int
    rows_down: int
    consumed: tuple[tuple[int, NeighbouringPair], ...]  # (height, pair), ascending
    star_targets: tuple[int, ...]  # original entries joined by *-lines, top down
    batches: tuple[Batch, ...]


@dataclass(frozen=True)
class DecoratedLine:
    i: int
    j: int
    label: str  # STAR, ONE or NEUTRAL
    src_box: tuple[int, int]  # (col, row) in the extended tableau
    dst_box: tuple[int, int]


@dataclass(frozen=True)
class ExtendedTableau:
    """The stabilized limit tableau together with the move history."""

    diagram: Diagram
    columns: tuple[tuple[int, ...], ...]
    moves: tuple[Move, ...]
    stage: int  # last completed row

    def occurrences(self, entry: int) -> tuple[tuple[int, int], ...]:
        return self._strings().get(entry, ())

    @lru_cache(maxsize=None)
    def _strings(self) -> dict[int, tuple[tuple[int, int], ...]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        for c, col in enumerate(self.columns):
            for r, entry in enumerate(col, start=1):
                occ.setdefault(entry, []).append((c, r))
        for entry, boxes in occ.items():
            boxes.sort()
            cols = [c for c, _ in boxes]
            if len(set(cols)) != len(cols):
                raise ConstructionViolation(f"entry {entry} repeats within a column")
        return {entry: tuple(boxes) for entry, boxes in occ.items()}

    def used_pairs(self) -> frozenset[NeighbouringPair]:
        return frozenset(p for m in self.moves for _, p in m.consumed)


@dataclass(frozen=True)
class ComponentTableau:
    """A decorated tableau on the original diagram: the choice data, the
    labelled lines collapsed back onto original boxes, and the supports of the
    ``1``-matrix and of the ``*``-span."""

    diagram: Diagram
    extended: ExtendedTableau
    lines: tuple[DecoratedLine, ...]  # labels ONE / STAR only, boxes in the diagram
    e_support: frozenset[Pos]
    v_support: frozenset[Pos]

    @property
    def moves(self) -> tuple[Move, ...]:
        return self.extended.moves

    @lru_cache(maxsize=None)
    def pair_entry(self) -> dict[NeighbouringPair, int]:
        """Which entry consumed each neighbouring pair."""
        table: dict[NeighbouringPair, int] = {}
        for move in self.moves:
            for _, pair in move.consumed:
                if pair in table:
                    raise ConstructionViolation(f"pair {pair} consumed twice")
                table[pair] = move.entry
        return table

    def choice_json(self) -> list[dict]:
        records = []
        for move in self.moves:
            for _, pair in move.consumed:
                records.append(
                    {
                        "t": move.stage,
                        "pairLeft": pair.left + 1,
                        "pairRight": pair.right + 1,
                        "entry": move.entry,
                        "rowsDown": move.rows_down,
                    }
                )
        return records

    def to_json(self) -> dict:
        return {
            "composition": list(self.diagram.parts),
            "choiceSequence": self.choice_json(),
            "lines": [
                {"i": line.i, "j": line.j, "label": line.label}
                for line in sorted(self.lines, key=lambda l: (l.label, l.i, l.j))
            ],
        }


class _State:
    __slots__ = ("cols", "right", "used", "moves")

    def __init__(self, cols, right, used, moves):
        self.cols: list[list[int]] = cols
        self.right: dict[int, tuple[int, int]] = right
        self.used: set[NeighbouringPair] = used
        self.moves: list[Move] = moves

    @classmethod
    def initial(cls, diagram: Diagram) -> "_State":
        cols = [list(col) for col in diagram.columns]
        right = {entry: (c, r) for c, col in enumerate(cols) for r, entry in enumerate(col, 1)}
        return cls(cols, right, set(), [])

    def clone(self) -> "_State":
        return _State(
            [list(col) for col in self.cols],
            dict(self.right),
            set(self.used),
            list(self.moves),
        )


def _batch(state: _State, pair: NeighbouringPair) -> Batch:
    members = sorted(
        entry
        for entry, (c, r) in state.right.items()
        if r <= pair.height and pair.left <= c < pair.right
    )
    return Batch(pair, pair.height, tuple(members))


def _candidates(diagram: Diagram, state: _State, stage: int) -> list[Move]:
    moves = []
    for src in range(diagram.k - 1):
        target = src + 1
        if len(state.cols[target]) != stage:
            continue
        h0 = diagram.height(target)
        for row in range(1, min(stage, len(state.cols[src])) + 1):
            entry = state.cols[src][row - 1]
            if state.right[entry] != (src, row):
                continue
            if row < stage and h0 != stage:
                # multi-row descents may only enter untouched columns
                continue
            consumed = []
            for s in range(row, stage + 1):
                pair = surrounding_pair(diagram, s, src)
                if pair is None or pair in state.used:
                    consumed = None
                    break
                consumed.append((s, pair))
            if consumed is None:
                continue
            top = min(row, h0)
            moves.append(
                Move(
                    stage=stage,
                    entry=entry,
                    src_col=src,
                    src_row=row,
                    target_col=target,
                    landing_row=stage + 1,
                    rows_down=stage - row + 1,
                    consumed=tuple(consumed),
                    star_targets=diagram.columns[target][top - 1 : h0],
                    batches=tuple(_batch(state, pair) for _, pair in consumed),
                )
            )
    moves.sort(key=lambda m: (m.src_col, m.src_row))
    return moves


def _subsets(moves: list[Move]):
    """All pairwise-compatible subsets, canonical (include-first) order."""

    def rec(idx: int, chosen: list[Move], targets: set[int], pairs: set[NeighbouringPair]):
        if idx == len(moves):
            yield list(chosen)
            return
        move = moves[idx]
        own = {p for _, p in move.consumed}
        if move.target_col not in targets and not (own & pairs):
            chosen.append(move)
            yield from rec(idx + 1, chosen, targets | {move.target_col}, pairs | own)
            chosen.pop()
        yield from rec(idx + 1, chosen, targets, pairs)

    yield from rec(0, [], set(), set())


def _apply(state: _State, subset: list[Move]) -> None:
    for move in subset:
        state.cols[move.target_col].append(move.entry)
        state.right[move.entry] = (move.target_col, move.landing_row)
        state.used.update(p for _, p in move.consumed)
        state.moves.append(move)


def _translate(state: _State, stage: int) -> bool:
    """Slide row stage+1 entries rightward into first-empty boxes; left to right."""
    row = stage + 1
    changed = False
    for c in range(len(state.cols) - 1):
        if len(state.cols[c]) < row:
            continue
        entry = state.cols[c][row - 1]
        if state.right[entry] != (c, row):
            continue
        if len(state.cols[c + 1]) == row - 1:
            state.cols[c + 1].append(entry)
            state.right[entry] = (c + 1, row)
            changed = True
    return changed


def extend_all(diagram: Diagram, validate: bool = False) -> tuple[ExtendedTableau, ...]:
    """Enumerate every limit tableau of the diagram, depth first over the
    lowering choices of each stage.  Every result consumes each neighbouring
    pair exactly once; branches that strand a pair are discarded."""
    all_pairs = frozenset(neighbouring_pairs(diagram))
    max_height = diagram.max_height
    hard_cap = max_height + len(all_pairs) + 2
    results: list[ExtendedTableau] = []

    def finalize(state: _State, stage: int) -> None:
        if state.used != all_pairs:
            return
        ext = ExtendedTableau(
            diagram,
            tuple(tuple(col) for col in state.cols),
            tuple(state.moves),
            stage,
        )
        if validate:
            _validate(ext)
        results.append(ext)

    def run(state: _State, stage: int) -> None:
        if stage > hard_cap:
            raise ConstructionViolation("stage cap exceeded; stabilization failed")
        candidates = _candidates(diagram, state, stage)
        if validate:
            for pair in neighbouring_pairs(diagram):
                if pair.height == stage and pair not in state.used:
                    usable = any(pair in {p for _, p in m.consumed} for m in candidates)
                    if not usable:
                        raise ConstructionViolation(
                            f"free pair {pair} has no admissible choice at its own stage"
                        )
        for subset in _subsets(candidates):
            branch = state.clone()
            _apply(branch, subset)
            _translate(branch, stage)
            if not subset and stage >= max_height:
                finalize(branch, stage)
            else:
                run(branch, stage + 1)

    run(_State.initial(diagram), 1)
    return tuple(results)


def _validate(ext: ExtendedTableau) -> None:
    for move in ext.moves:
        if move.entry not in {
            e for b in move.batches for e in b.members
        } and move.batches:
            raise ConstructionViolation(f"move entry {move.entry} missing from its batches")
    seen: set[NeighbouringPair] = set()
    for move in ext.moves:
        for _, pair in move.consumed:
            if pair in seen:
                raise ConstructionViolation(f"pair {pair} used twice")
            seen.add(pair)


def strings(ext: ExtendedTableau) -> dict[int, tuple[tuple[int, int], ...]]:
    """Per entry, the ordered boxes of its trail through the limit tableau."""
    return {entry: ext.occurrences(entry) for entry in range(1, ext.diagram.n + 1)}


def decorate(ext: ExtendedTableau) -> tuple[DecoratedLine, ...]:
    """The full line family of the limit tableau: stars, ones and neutrals."""
    diagram = ext.diagram
    lines: list[DecoratedLine] = []

    for move in ext.moves:
        src = (move.target_col, move.landing_row)
        for j in move.star_targets:
            lines.append(DecoratedLine(move.entry, j, STAR, src, diagram.box_of(j)))

    for entry in range(1, diagram.n + 1):
        boxes = ext.occurrences(entry)
        for a, b in zip(boxes, boxes[1:]):
            lines.append(DecoratedLine(entry, entry, NEUTRAL, a, b))

    for c in range(diagram.k - 1):
        stopped = []
        for r, entry in enumerate(ext.columns[c], start=1):
            if ext.occurrences(entry)[-1] == (c, r):
                stopped.append((r, entry))
        stopped.sort()
        taken: set[int] = set()
        for r, entry in stopped:
            target = next((j for j in diagram.columns[c + 1] if j not in taken), None)
            if target is None:
                raise ConstructionViolation(
                    f"no endpoint left in column {c + 2} for stopped entry {entry}"
                )
            taken.add(target)
            lines.append(DecoratedLine(entry, target, ONE, (c, r), diagram.box_of(target)))

    return tuple(lines)


def collapse(ext: ExtendedTableau, lines: tuple[DecoratedLine, ...]) -> ComponentTableau:
    """Re-anchor the starred and one-labelled lines to original boxes."""
    diagram = ext.diagram
    collapsed = []
    e_support = set()
    v_support = set()
    for line in lines:
        if line.label == NEUTRAL:
            continue
        pos = (line.i, line.j)
        if not diagram.in_nilradical(pos):
            raise ConstructionViolation(f"line {pos} not in the nilradical")
        collapsed.append(
            DecoratedLine(line.i, line.j, line.label, diagram.box_of(line.i), diagram.box_of(line.j))
        )
        (v_support if line.label == STAR else e_support).add(pos)
    if e_support & v_support:
        raise ConstructionViolation("a position carries both labels")
    if len(v_support) != len(neighbouring_pairs(diagram)):
        raise ConstructionViolation("star count differs from the neighbouring-pair count")
    return ComponentTableau(
        diagram,
        ext,
        tuple(collapsed),
        frozenset(e_support),
        frozenset(v_support),
    )


def enumerate_component_tableaux(diagram: Diagram, validate: bool = False) -> tuple[ComponentTableau, ...]:
    return tuple(collapse(ext, decorate(ext)) for ext in extend_all(diagram, validate=validate))


@lru_cache(maxsize=None)
def component_tableaux(parts: tuple[int, ...]) -> tuple[ComponentTableau, ...]:
    """Cached enumeration for a composition given by its parts."""
    return enumerate_component_tableaux(diagram_of(parts))
