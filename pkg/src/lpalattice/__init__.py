"""Exact ideal-lattice computations for Leavitt path algebras."""

from .graph import (
    OMEGA,
    AdmissiblePair,
    Bundle,
    CycleClass,
    Graph,
    GraphError,
    PairLattice,
    breaking_vertices,
    cycle_vertex_closure,
    cycles,
    downward_directed,
    exclusive_cycles,
    exit_closure,
    has_condition_k,
    hereditary_closure,
    hereditary_saturated_closure,
    is_row_finite,
    pair_lattice,
    saturated_closure,
)
from .ideals import (
    ClassificationError,
    Context,
    CyclePoly,
    ClassifiedIdeal,
    SaturatedFunction,
    ScaledBreaking,
    ScaledVertex,
    context,
    from_generators,
    graded_lattice,
    prime_report,
    saturate_function,
    to_generators,
    validate_tables,
)
from .laurent import LaurentIdeal, LaurentPoly, parse_poly
from .rings import (
    QQ,
    ZZ,
    IntegersMod,
    PrimeField,
    RingError,
    RingIdeal,
    RingSpec,
    ideal_enumerate,
    parse_ring,
)

__all__ = [
    "OMEGA",
    "AdmissiblePair",
    "Bundle",
    "ClassificationError",
    "Context",
    "CycleClass",
    "CyclePoly",
    "ClassifiedIdeal",
    "Graph",
    "GraphError",
    "IntegersMod",
    "LaurentIdeal",
    "LaurentPoly",
    "PairLattice",
    "PrimeField",
    "QQ",
    "RingError",
    "RingIdeal",
    "RingSpec",
    "SaturatedFunction",
    "ScaledBreaking",
    "ScaledVertex",
    "ZZ",
    "breaking_vertices",
    "context",
    "cycle_vertex_closure",
    "cycles",
    "downward_directed",
    "exclusive_cycles",
    "exit_closure",
    "from_generators",
    "graded_lattice",
    "has_condition_k",
    "hereditary_closure",
    "hereditary_saturated_closure",
    "ideal_enumerate",
    "is_row_finite",
    "pair_lattice",
    "parse_poly",
    "parse_ring",
    "prime_report",
    "saturate_function",
    "saturated_closure",
    "to_generators",
    "validate_tables",
]
