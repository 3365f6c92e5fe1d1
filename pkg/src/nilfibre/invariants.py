"""The semi-invariant generators: exact minors, coefficient extraction,
monomial-chain cross-engine, vanishing and section restrictions.

For a neighbouring pair of height s the generator is read off the
(n'-s) x (n'-s) lower-left minor of the interval's matrix model, evaluated on
the nilradical plus the parameter on the diagonal of every Levi block larger
than s.  The coefficient of the parameter's minimal power (one per box below
the height-s band) is the generator; its monomials are exactly the products
of s disjoint strictly-left-to-right entry chains joining the two columns.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from random import Random

from .core import (
    Diagram,
    InternalConsistencyError,
    NeighbouringPair,
    Pos,
    boxes_below_band,
    interval_entries,
    neighbouring_pairs,
    true_degree,
)
from .builder import ComponentTableau
from .linalg import bareiss_det
from .poly import Poly, evaluate
from .roots import ExcludedRootSet, penetrating_string, special_star_line

DEFAULT_SYMBOLIC_MAX_N = 10


def _minor_shape(diagram: Diagram, pair: NeighbouringPair):
    entries = list(interval_entries(diagram, pair))
    s = pair.height
    return entries, len(entries), s


def _minor_entry(diagram: Diagram, row_entry: int, col_entry: int, s: int, full_identity: bool):
    """Symbolic content of one minor cell, or None when it vanishes."""
    if col_entry == row_entry:
        if full_identity or diagram.height(diagram.column_of(row_entry)) > s:
            return "a"
        return None
    if col_entry < row_entry and diagram.column_of(col_entry) < diagram.column_of(row_entry):
        return (col_entry, row_entry)
    return None


def symbolic_minor(diagram: Diagram, pair: NeighbouringPair, full_identity: bool = False) -> Poly:
    """Exact expansion of the lower-left minor of the pair's interval.

    Entries outside the interval never occur and are suppressed up front.
    ``full_identity`` also puts the parameter on blocks of height <= s; the
    extracted coefficient is unchanged, which the test-suite exploits.
    """
    entries, n_prime, s = _minor_shape(diagram, pair)
    size = n_prime - s
    rows = entries[s:]
    cols = entries[:size]

    cells: list[list[Poly | None]] = []
    for r in rows:
        line = []
        for c in cols:
            content = _minor_entry(diagram, r, c, s, full_identity)
            if content is None:
                line.append(None)
            elif content == "a":
                line.append(Poly.a())
            else:
                line.append(Poly.var(content))
        cells.append(line)

    memo: dict[tuple[int, ...], Poly] = {(): Poly.const(1)}

    def det(available: tuple[int, ...]) -> Poly:
        if available in memo:
            return memo[available]
        p = size - len(available)
        total = Poly.zero()
        for idx, q in enumerate(available):
            cell = cells[p][q]
            if cell is None:
                continue
            sub = det(available[:idx] + available[idx + 1 :])
            if sub.is_zero():
                continue
            term = cell * sub
            total = total + (term if idx % 2 == 0 else -term)
        memo[available] = total
        return total

    return det(tuple(range(size)))


@dataclass(frozen=True)
class InvariantRecord:
    pair: NeighbouringPair
    band_boxes: int  # parameter valuation of the raw minor
    degree: int
    polynomial: Poly

    def to_json(self) -> dict:
        return {
            "pair": {"left": self.pair.left + 1, "right": self.pair.right + 1, "height": self.pair.height},
            "degree": self.degree,
            "d_D": self.band_boxes,
            "monomialCount": len(self.polynomial.terms),
            "polynomial": self.polynomial.to_json(),
        }


def extract_invariant(diagram: Diagram, pair: NeighbouringPair, minor: Poly | None = None) -> InvariantRecord:
    """Sign-normalized coefficient of the minimal parameter power."""
    if minor is None:
        minor = symbolic_minor(diagram, pair)
    d = boxes_below_band(diagram, pair)
    degree = true_degree(diagram, pair)
    for lower in range(d):
        if not minor.a_coefficient(lower).is_zero():
            raise InternalConsistencyError(
                f"raw minor of {pair} has a nonzero coefficient below valuation {d}"
            )
    inv = minor.a_coefficient(d).sign_normalized()
    if inv.is_zero():
        raise InternalConsistencyError(f"extracted invariant of {pair} is zero")
    if not inv.is_multilinear() or inv.total_degrees() != {degree}:
        raise InternalConsistencyError(f"invariant of {pair} is not multilinear of degree {degree}")
    return InvariantRecord(pair, d, degree, inv)


def _cache_dir() -> str | None:
    return os.environ.get("COMPONENT_TABLEAUX_CACHE") or None


@lru_cache(maxsize=None)
def invariant_for(parts: tuple[int, ...], pair: NeighbouringPair) -> InvariantRecord:
    """Memoized extraction, optionally backed by the on-disk cache."""
    from .core import diagram_of

    diagram = diagram_of(parts)
    cache = _cache_dir()
    path = None
    if cache:
        name = "inv_{}_{}_{}.json".format(
            "-".join(map(str, parts)), pair.left, pair.right
        )
        path = os.path.join(cache, name)
        if os.path.exists(path):
            with open(path) as handle:
                data = json.load(handle)
            return InvariantRecord(pair, data["d_D"], data["degree"], Poly.from_json(data["polynomial"]))
    record = extract_invariant(diagram, pair)
    if path:
        os.makedirs(cache, exist_ok=True)
        with open(path, "w") as handle:
            json.dump(record.to_json(), handle)
    return record


def chain_support(diagram: Diagram, pair: NeighbouringPair) -> frozenset[frozenset[Pos]]:
    """All products of s disjoint strictly-left-to-right chains from the left
    column to the right column, as position sets.  Signs are not tracked; the
    determinant engine is authoritative for signed identities."""
    s = pair.height
    frontier0 = tuple(diagram.columns[pair.left])
    results: set[frozenset[Pos]] = set()

    def advance(col: int, frontier: tuple[int, ...], edges: frozenset[Pos]):
        if col == pair.right:
            boxes = diagram.columns[col]
            for image in permutations(boxes):
                results.add(edges | {(frontier[p], image[p]) for p in range(s)})
            return
        boxes = diagram.columns[col]
        visits = min(len(boxes), s)
        for walkers in combinations(range(s), visits):
            for landing in permutations(boxes, visits):
                new_frontier = list(frontier)
                new_edges = set(edges)
                for p, box in zip(walkers, landing):
                    new_edges.add((frontier[p], box))
                    new_frontier[p] = box
                advance(col + 1, tuple(new_frontier), frozenset(new_edges))

    advance(pair.left + 1, frontier0, frozenset())
    return frozenset(results)


def _random_invariant_value(
    diagram: Diagram,
    pair: NeighbouringPair,
    zeroed: frozenset[Pos],
    rng: Random,
) -> int:
    """Exact value of the invariant at one random integer point with the
    ``zeroed`` coordinates set to zero: the minor is evaluated at enough
    distinct parameter values and the valuation coefficient interpolated."""
    entries, n_prime, s = _minor_shape(diagram, pair)
    size = n_prime - s
    rows, cols = entries[s:], entries[:size]
    assignment: dict[Pos, int] = {}
    base: list[list[tuple[str, int]]] = []
    for r in rows:
        line: list[tuple[str, int]] = []
        for c in cols:
            content = _minor_entry(diagram, r, c, s, False)
            if content is None:
                line.append(("z", 0))
            elif content == "a":
                line.append(("a", 0))
            else:
                if content in zeroed:
                    line.append(("z", 0))
                else:
                    if content not in assignment:
                        assignment[content] = rng.randrange(1, 1 << 32)
                    line.append(("v", assignment[content]))
        base.append(line)

    count = n_prime - s + 1  # strictly above the parameter degree of the minor
    points = list(range(1, count + 1))
    values = []
    for a_val in points:
        matrix = [
            [a_val if kind == "a" else value for kind, value in line] for line in base
        ]
        values.append(bareiss_det(matrix))

    # Lagrange interpolation of the valuation coefficient.
    d = boxes_below_band(diagram, pair)
    coeff = Fraction(0)
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        numer = [1]
        for j, xj in enumerate(points):
            if j == i:
                continue
            numer = _poly_mul_linear(numer, -xj)
        denom = 1
        for j, xj in enumerate(points):
            if j != i:
                denom *= xi - xj
        coeff += Fraction(yi * numer[d], denom)
    if coeff.denominator != 1:
        raise InternalConsistencyError("interpolated coefficient is not integral")
    return int(coeff)


def _poly_mul_linear(coeffs: list[int], constant: int) -> list[int]:
    """Multiply a coefficient list (ascending powers) by (x + constant)."""
    out = [0] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k] += c * constant
        out[k + 1] += c
    return out


def _has_perfect_matching(adjacency: dict[int, list[int]], size: int) -> bool:
    match_of_col: dict[int, int] = {}

    def augment(row: int, seen: set[int]) -> bool:
        for col in adjacency.get(row, ()):
            if col in seen:
                continue
            seen.add(col)
            if col not in match_of_col or augment(match_of_col[col], seen):
                match_of_col[col] = row
                return True
        return False

    return all(augment(row, set()) for row in range(size))


def max_height_structural_vanishing(ct: ComponentTableau, pair: NeighbouringPair) -> bool | None:
    """Advisory fast path for pairs of maximal height within their interval:
    the minor is then parameter-free and its determinant vanishes structurally
    once the primary exclusions of the penetrating trail are zeroed, detected
    as the absence of a perfect matching in the surviving support.  Returns
    None when the pair is not interval-maximal; never authoritative."""
    from .roots import _generator_exclusions

    diagram = ct.diagram
    s = pair.height
    if any(diagram.height(c) > s for c in range(pair.left, pair.right + 1)):
        return None
    record = penetrating_string(ct, pair)
    primary = frozenset(
        p
        for m in record.steps
        for p in _generator_exclusions(diagram, m.entry, m.star_targets, m.target_col).primary
    )
    entries, n_prime, _ = _minor_shape(diagram, pair)
    size = n_prime - s
    rows, cols = entries[s:], entries[:size]
    adjacency = {
        ri: [
            ci
            for ci, c in enumerate(cols)
            if _minor_entry(diagram, r, c, s, False) not in (None, "a")
            and (c, r) not in primary
        ]
        for ri, r in enumerate(rows)
    }
    return not _has_perfect_matching(adjacency, size)


@dataclass(frozen=True)
class PairVanishing:
    pair: NeighbouringPair
    mode: str  # "symbolic" or "randomized"
    global_ok: bool
    specific_ok: bool
    global_witness: tuple | None
    specific_witness: tuple | None


@dataclass(frozen=True)
class VanishingReport:
    results: tuple[PairVanishing, ...]

    @property
    def ok(self) -> bool:
        return all(r.global_ok and r.specific_ok for r in self.results)

    def to_json(self) -> list[dict]:
        return [
            {
                "pair": {"left": r.pair.left + 1, "right": r.pair.right + 1, "height": r.pair.height},
                "mode": r.mode,
                "global": r.global_ok,
                "specific": r.specific_ok,
                "witness": _witness_json(r.global_witness) or _witness_json(r.specific_witness),
            }
            for r in self.results
        ]


def _witness_json(witness):
    if witness is None:
        return None
    return [list(p) for p in sorted(witness)]


def _symbolic_zero(record: InvariantRecord, zeroed: frozenset[Pos]):
    reduced = record.polynomial.substitute({p: 0 for p in zeroed})
    if reduced.is_zero():
        return True, None
    witness = min(reduced.monomial_support(), key=sorted)
    return False, tuple(sorted(witness))


def _randomized_zero(diagram, pair, zeroed, rng: Random, trials: int):
    for _ in range(trials):
        if _random_invariant_value(diagram, pair, zeroed, rng) != 0:
            return False, ("nonzero evaluation",)
    return True, None


def vanishing_check(
    ct: ComponentTableau,
    roots: ExcludedRootSet,
    symbolic_max_n: int = DEFAULT_SYMBOLIC_MAX_N,
    rng: Random | None = None,
    trials: int = 8,
) -> VanishingReport:
    """Every generator must die when the excluded coordinates are zeroed
    (global mode), and each generator already dies under the exclusions of its
    own penetrating trail (specific mode)."""
    diagram = ct.diagram
    rng = rng or Random(0)
    results = []
    for pair in neighbouring_pairs(diagram):
        specific = penetrating_string(ct, pair).excluded
        entries, n_prime, _ = _minor_shape(diagram, pair)
        if n_prime <= symbolic_max_n:
            record = invariant_for(diagram.parts, pair)
            g_ok, g_wit = _symbolic_zero(record, roots.excluded)
            s_ok, s_wit = _symbolic_zero(record, specific)
            mode = "symbolic"
        else:
            g_ok, g_wit = _randomized_zero(diagram, pair, roots.excluded, rng, trials)
            s_ok, s_wit = _randomized_zero(diagram, pair, specific, rng, trials)
            mode = "randomized"
        results.append(PairVanishing(pair, mode, g_ok, s_ok, g_wit, s_wit))
    return VanishingReport(tuple(results))


@dataclass(frozen=True)
class PairRestriction:
    pair: NeighbouringPair
    variable: Pos | None  # the surviving star coordinate
    ok: bool
    rest: Poly


@dataclass(frozen=True)
class WeierstrassReport:
    results: tuple[PairRestriction, ...]
    distinct: bool

    @property
    def ok(self) -> bool:
        return self.distinct and all(r.ok for r in self.results)


def weierstrass_restrict(ct: ComponentTableau, pair: NeighbouringPair) -> PairRestriction:
    """Restrict the generator to the section: ones to 1, stars kept symbolic,
    everything else to 0.  The result must be plus-or-minus the single star
    coordinate picked out combinatorially."""
    record = invariant_for(ct.diagram.parts, pair)
    assignment = {}
    for pos in record.polynomial.variables():
        if pos in ct.v_support:
            continue
        assignment[pos] = 1 if pos in ct.e_support else 0
    rest = record.polynomial.substitute(assignment)
    expected = special_star_line(ct, pair)
    single = None
    if len(rest.terms) == 1:
        (mono, coeff), = rest.terms.items()
        _, vars_ = mono
        if len(vars_) == 1 and vars_[0][1] == 1 and coeff in (1, -1):
            single = vars_[0][0]
    ok = single is not None and single == expected and single in ct.v_support
    return PairRestriction(pair, single, ok, rest)


def weierstrass_check(ct: ComponentTableau) -> WeierstrassReport:
    results = tuple(weierstrass_restrict(ct, pair) for pair in neighbouring_pairs(ct.diagram))
    seen = [r.variable for r in results if r.variable is not None]
    distinct = len(seen) == len(set(seen))
    return WeierstrassReport(results, distinct)


def evaluate_at_section_point(record: InvariantRecord, ones: frozenset[Pos], extra: Pos) -> int:
    """Value of the generator at the one-matrix plus a single extra coordinate."""
    assignment = {}
    for pos in record.polynomial.variables():
        assignment[pos] = 1 if (pos in ones or pos == extra) else 0
    return record.polynomial.substitute(assignment).constant_value()
