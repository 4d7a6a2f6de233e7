"""Exact combinatorics of web diagrams, web worlds, and their matrices.

The package builds the full orbit of a diagram under per-peg height
permutations, computes the world's colouring matrix (integer-polynomial
entries) and mixing matrix (exact rationals), decomposes diagrams into
indecomposable blocks and posets, counts worlds by pegs, edges, and peg
pairs, and packages closed forms for three solvable families. Every
numeric claim has a brute-force twin in :mod:`webworlds.verify`.
"""

from .diagram import (
    Colouring,
    Edge,
    WebDiagram,
    WebWorld,
    apply_permutations,
    diagram_from_json,
    diagram_to_json,
    predicted_world_size,
    reconstruct,
    stack,
    subweb,
    surjective_colourings,
    validate_diagram,
    web_world,
)
from .errors import WebWorldsError
from .matrices import (
    IntPolynomial,
    WorldMatrix,
    colouring_matrix,
    is_idempotent,
    matrix_to_csv,
    matrix_to_json,
    mixing_from_polynomial,
    mixing_matrix,
    ordered_bell_polynomial,
    rank,
    row_sums,
    trace,
    world_matrices,
)
from .posets import (
    DecompositionPoset,
    decompose,
    decomposition_poset,
    descents,
    diagonal_colouring_polynomial,
    diagonal_mixing_value,
    linear_extensions,
    order_preserving_count,
    poset_to_json,
    surjective_order_preserving_count,
    traces_via_posets,
    world_posets,
)
from .enumeration import (
    count_proper_worlds,
    count_worlds,
    count_worlds_no_isolated,
    count_worlds_series,
    enumerate_worlds,
    is_proper,
    represent,
    seed_diagram,
    web_graph,
    world_size,
)
from .cases import (
    chain_diagram,
    chain_matrices,
    chain_traces,
    cycle_diagram,
    cycle_matrices,
    cycle_traces,
    eulerian,
    fan_diagram,
    fan_matrices,
    fan_traces,
    stirling2,
)
from .transitive import (
    core_matrix,
    count_transitive,
    is_transitive,
    reattach,
    transitive_matrices,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "Colouring",
    "DecompositionPoset",
    "Edge",
    "IntPolynomial",
    "WebDiagram",
    "WebWorld",
    "WebWorldsError",
    "WorldMatrix",
    "apply_permutations",
    "chain_diagram",
    "chain_matrices",
    "chain_traces",
    "colouring_matrix",
    "core_matrix",
    "count_proper_worlds",
    "count_transitive",
    "count_worlds",
    "count_worlds_no_isolated",
    "count_worlds_series",
    "cycle_diagram",
    "cycle_matrices",
    "cycle_traces",
    "decompose",
    "decomposition_poset",
    "descents",
    "diagonal_colouring_polynomial",
    "diagonal_mixing_value",
    "diagram_from_json",
    "diagram_to_json",
    "enumerate_worlds",
    "eulerian",
    "fan_diagram",
    "fan_matrices",
    "fan_traces",
    "is_idempotent",
    "is_proper",
    "is_transitive",
    "linear_extensions",
    "matrix_to_csv",
    "matrix_to_json",
    "mixing_from_polynomial",
    "mixing_matrix",
    "order_preserving_count",
    "ordered_bell_polynomial",
    "poset_to_json",
    "predicted_world_size",
    "rank",
    "reattach",
    "reconstruct",
    "represent",
    "row_sums",
    "run_suite",
    "seed_diagram",
    "stack",
    "stirling2",
    "subweb",
    "surjective_colourings",
    "surjective_order_preserving_count",
    "trace",
    "traces_via_posets",
    "transitive_matrices",
    "validate_diagram",
    "web_graph",
    "web_world",
    "world_matrices",
    "world_posets",
    "world_size",
]
