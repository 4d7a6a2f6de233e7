"""Transitive web worlds and their core-matrix correspondence.

A world is transitive when, reading its represent matrix, every peg
except the last sends an edge rightwards and every peg except the first
receives one from the left.  Removing the represent matrix's first
column and last row is then a lossless projection onto upper-triangular
matrices whose rows and columns are all non-zero, which is what makes
these worlds easy to count.
"""

from __future__ import annotations

from typing import Sequence

from .enumeration import Rows, enumerate_worlds, validate_represent
from .errors import BadRange, BoundsTooLarge, IsolatedPeg, NotTransitive

TRANSITIVE_EDGE_GUARD = 6


def is_transitive(rows: Sequence[Sequence[int]]) -> bool:
    """Whether every non-final row and non-initial column is non-zero.

    Isolated pegs are rejected up front because the test below cannot
    distinguish a peg that genuinely breaks transitivity from one that
    merely should not be in the matrix at all.
    """
    rows = validate_represent(rows)
    m = len(rows)
    for i in range(m):
        if all(rows[i][j] == 0 for j in range(m)) and all(
            rows[j][i] == 0 for j in range(m)
        ):
            raise IsolatedPeg(f"peg {i + 1} touches no edge")
    for i in range(m - 1):
        if all(rows[i][j] == 0 for j in range(m)):
            return False
    for j in range(1, m):
        if all(rows[i][j] == 0 for i in range(m)):
            return False
    return True


def core_matrix(rows: Sequence[Sequence[int]]) -> Rows:
    """Drop the first column and last row of a transitive represent matrix.

    The result is upper triangular with its diagonal allowed, has no
    zero row or column, and loses no information: the dropped column
    and row of a strictly upper-triangular matrix are zero by shape.
    """
    rows = validate_represent(rows)
    if not is_transitive(rows):
        raise NotTransitive("core matrix is only defined for transitive worlds")
    m = len(rows)
    return tuple(tuple(rows[i][j] for j in range(1, m)) for i in range(m - 1))


def reattach(core: Sequence[Sequence[int]]) -> Rows:
    """Inverse of core_matrix: prepend a zero column and append a zero row.

    Accepts any non-negative upper-triangular (diagonal allowed) matrix
    whose rows and columns are all non-zero; these are exactly the cores
    of transitive represent matrices.
    """
    core = tuple(tuple(int(v) for v in row) for row in core)
    k = len(core)
    if k == 0 or any(len(row) != k for row in core):
        raise BadRange("core must be a non-empty square matrix")
    for i in range(k):
        for j in range(k):
            if core[i][j] < 0:
                raise BadRange("core entries must be non-negative")
            if i > j and core[i][j] != 0:
                raise BadRange("core must be upper triangular")
    for i in range(k):
        if all(core[i][j] == 0 for j in range(k)):
            raise BadRange(f"core row {i + 1} is zero")
        if all(core[j][i] == 0 for j in range(k)):
            raise BadRange(f"core column {i + 1} is zero")
    rows = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(k):
        for j in range(k):
            rows[i][j + 1] = core[i][j]
    return validate_represent(rows)


def transitive_matrices(edges: int) -> tuple[Rows, ...]:
    """All transitive represent matrices with the given edge count.

    Transitivity forces at most edges + 1 pegs, so the enumeration range
    is complete.
    """
    if edges < 1:
        raise BadRange("a transitive world needs at least one edge")
    if edges > TRANSITIVE_EDGE_GUARD:
        raise BoundsTooLarge(
            f"edge count {edges} exceeds the guard {TRANSITIVE_EDGE_GUARD}"
        )
    return tuple(
        rows
        for rows in enumerate_worlds(
            max_pegs=edges + 1,
            max_edges=edges,
            exact_edges=edges,
            no_isolated=True,
        )
        if is_transitive(rows)
    )


def count_transitive(edges: int) -> int:
    """Number of transitive web worlds with the given edge count."""
    return len(transitive_matrices(edges))
