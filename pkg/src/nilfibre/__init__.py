"""Exact combinatorial engine for the nilfibre components of parabolic
nilradicals in sl(n): tableau enumeration, excluded-root sets, semi-invariant
generators and machine verification of their structural theorems."""

from .core import (
    Composition,
    ConstructionViolation,
    Diagram,
    InternalConsistencyError,
    InvalidInput,
    NeighbouringPair,
    boxes_below_band,
    build_diagram,
    diagram_of,
    generator_count,
    neighbouring_pairs,
    true_degree,
)
from .builder import (
    ComponentTableau,
    ExtendedTableau,
    collapse,
    component_tableaux,
    decorate,
    enumerate_component_tableaux,
    extend_all,
    strings,
)
from .roots import (
    ExcludedRootSet,
    excluded_from_word,
    excluded_roots,
    hatted_tableau,
    penetrating_string,
    shifted_tableau,
    special_star_line,
    word_form,
)
from .poly import Poly, evaluate
from .invariants import (
    InvariantRecord,
    chain_support,
    extract_invariant,
    max_height_structural_vanishing,
    invariant_for,
    symbolic_minor,
    vanishing_check,
    weierstrass_check,
    weierstrass_restrict,
)
from .analysis import (
    covering_check,
    injectivity_witness,
    jordan_type,
    orbit_dimension,
    orbital_variety_test,
    tangent_dimension,
)
from .conformance import compositions_of, sweep, verify_composition

__version__ = "0.1.0"
