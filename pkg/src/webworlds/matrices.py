"""Exact colouring/mixing matrices of a web world and their structure checks.

Matrix rows and columns follow the world's canonical diagram order. The
colouring matrix has integer-polynomial entries whose x^k coefficient
counts the surjective k-colourings of the row diagram that reconstruct
to the column diagram; the mixing matrix weights those counts by
(-1)^(k-1)/k and lives over exact rationals.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .diagram import (
    WebDiagram,
    WebWorld,
    peg_slots,
    restacked_edge_key,
    surjection_tuples,
)
from .errors import BadRange, DifferentWorlds, WorldTooLarge

DEFAULT_ENTRY_GUARD = 4_000_000


class IntPolynomial:
    """Immutable integer polynomial; coefficient index equals degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        return IntPolynomial(
            [x + y for x, y in itertools.zip_longest(a, b, fillvalue=0)]
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise BadRange("polynomial power must be non-negative")
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    terms.append(var)
                elif c == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{c}{var}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


def polynomial_to_coeff_string(poly: IntPolynomial) -> str:
    """Semicolon-joined coefficients, constant term first ("0" for zero)."""
    if not poly.coeffs:
        return "0"
    return ";".join(str(c) for c in poly.coeffs)


def polynomial_from_coeff_string(text: str) -> IntPolynomial:
    return IntPolynomial([int(part) for part in text.split(";")])


def ordered_bell_polynomial(m: int) -> IntPolynomial:
    """Sum over k of (surjections of m things onto k) * x^k.

    This is the common row sum of every colouring matrix with m edges;
    its value at 1 is the m-th Fubini number.
    """
    if m < 0:
        raise BadRange("ordered Bell index must be non-negative")
    if m == 0:
        return ONE
    coeffs = [0] * (m + 1)
    for k in range(1, m + 1):
        coeffs[k] = sum(
            (-1) ** j * math.comb(k, j) * (k - j) ** m for j in range(k + 1)
        )
    return IntPolynomial(coeffs)


@dataclass(frozen=True)
class WorldMatrix:
    """A square matrix indexed by a world's canonical diagram order."""

    entries: tuple[tuple, ...]
    world: WebWorld | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise BadRange("matrix must be square and non-empty")

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int):
        return self.entries[i][j]


def trace(matrix: WorldMatrix):
    return reduce(operator.add, (matrix.entries[i][i] for i in range(matrix.size)))


def row_sums(matrix: WorldMatrix) -> tuple:
    return tuple(reduce(operator.add, row) for row in matrix.entries)


def _require_same_world(d1: WebDiagram, d2: WebDiagram) -> None:
    # a shared represent matrix (peg-pair multiplicities on equal peg
    # counts) is exactly membership in a common world
    if d1.num_pegs != d2.num_pegs or d1.peg_pair_counts() != d2.peg_pair_counts():
        raise DifferentWorlds("diagrams do not share a web world")


def reconstruction_count(d1: WebDiagram, d2: WebDiagram, colours: int) -> int:
    """Number of surjective `colours`-colourings of d1 that reconstruct to d2."""
    _require_same_world(d1, d2)
    if not 1 <= colours <= d1.edge_count:
        raise BadRange(f"colours must lie in 1..{d1.edge_count}")
    slots = peg_slots(d1)
    target = d2.edge_key()
    return sum(
        1
        for assignment in surjection_tuples(d1.edge_count, colours)
        if restacked_edge_key(d1, slots, assignment) == target
    )


def _count_vector(d1: WebDiagram, d2: WebDiagram) -> list[int]:
    _require_same_world(d1, d2)
    counts = [0] * (d1.edge_count + 1)
    slots = peg_slots(d1)
    target = d2.edge_key()
    for colours in range(1, d1.edge_count + 1):
        counts[colours] = sum(
            1
            for assignment in surjection_tuples(d1.edge_count, colours)
            if restacked_edge_key(d1, slots, assignment) == target
        )
    return counts


def colouring_entry(d1: WebDiagram, d2: WebDiagram) -> IntPolynomial:
    return IntPolynomial(_count_vector(d1, d2))


def mixing_entry(d1: WebDiagram, d2: WebDiagram) -> Fraction:
    counts = _count_vector(d1, d2)
    return sum(
        (Fraction((-1) ** (k - 1) * counts[k], k) for k in range(1, len(counts))),
        Fraction(0),
    )


def mixing_from_polynomial(poly: IntPolynomial) -> Fraction:
    """Term-wise transform sending x^k to (-1)^(k-1)/k.

    This realizes the exact integral relation between the two matrices:
    integrating -M(-x)/x over [0, 1] term by term.
    """
    if poly.coefficient(0):
        raise BadRange("polynomial has a constant term; not a colouring entry")
    return sum(
        (
            Fraction((-1) ** (k - 1) * poly.coefficient(k), k)
            for k in range(1, len(poly.coeffs))
        ),
        Fraction(0),
    )


def _world_counts(world: WebWorld, max_entries: int) -> list[list[list[int]]]:
    size = len(world)
    if size * size > max_entries:
        raise WorldTooLarge(f"{size}x{size} matrix exceeds the {max_entries}-entry guard")
    if world.edge_count == 0:
        raise BadRange("matrices are defined for worlds with at least one edge")
    edge_count = world.edge_count
    counts = [[[0] * (edge_count + 1) for _ in range(size)] for _ in range(size)]
    index = world.index
    for row, diagram in enumerate(world):
        slots = peg_slots(diagram)
        # only pegs with two or more endpoints can react to a colouring
        live = [lst for lst in slots if len(lst) > 1]
        row_counts = counts[row]
        # distinct reorderings are far fewer than colourings, so cache
        # the target index per reordering instead of re-keying each word
        seen: dict[tuple[tuple[int, int], ...], int] = {}
        for colours in range(1, edge_count + 1):
            for assignment in surjection_tuples(edge_count, colours):
                ordering: list[tuple[int, int]] = []
                for lst in live:
                    ordering.extend(sorted(lst, key=lambda t: assignment[t[0]]))
                key = tuple(ordering)
                target = seen.get(key)
                if target is None:
                    target = index[restacked_edge_key(diagram, slots, assignment)]
                    seen[key] = target
                row_counts[target][colours] += 1
    return counts


def world_matrices(
    world: WebWorld, max_entries: int = DEFAULT_ENTRY_GUARD
) -> tuple[WorldMatrix, WorldMatrix]:
    """Colouring and mixing matrices from a single enumeration pass."""
    counts = _world_counts(world, max_entries)
    edge_count = world.edge_count
    denom = math.lcm(*range(1, edge_count + 1))
    weights = [0] + [
        (-1) ** (k - 1) * (denom // k) for k in range(1, edge_count + 1)
    ]
    poly_rows = []
    mix_rows = []
    for row in counts:
        poly_rows.append(tuple(IntPolynomial(cell) for cell in row))
        mix_rows.append(
            tuple(
                Fraction(
                    sum(weights[k] * cell[k] for k in range(1, len(cell))), denom
                )
                for cell in row
            )
        )
    return (
        WorldMatrix(tuple(poly_rows), world),
        WorldMatrix(tuple(mix_rows), world),
    )


def colouring_matrix(world: WebWorld, max_entries: int = DEFAULT_ENTRY_GUARD) -> WorldMatrix:
    return world_matrices(world, max_entries)[0]


def mixing_matrix(world: WebWorld, max_entries: int = DEFAULT_ENTRY_GUARD) -> WorldMatrix:
    return world_matrices(world, max_entries)[1]


def _integer_rows(matrix: WorldMatrix) -> list[list[int]]:
    # scale each row by the lcm of its denominators; row scaling is
    # rank-neutral and keeps Bareiss elimination over plain ints
    rows = []
    for row in matrix.entries:
        fracs = [Fraction(e) for e in row]
        scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        rows.append([int(f * scale) for f in fracs])
    return rows


def rank(matrix: WorldMatrix) -> int:
    """Matrix rank via fraction-free (Bareiss) elimination."""
    m = _integer_rows(matrix)
    size = matrix.size
    r = 0
    prev = 1
    for col in range(size):
        pivot = next((i for i in range(r, size) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, size):
            for j in range(col + 1, size):
                m[i][j] = (m[i][j] * m[r][col] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = m[r][col]
        r += 1
    return r


def is_idempotent(matrix: WorldMatrix) -> bool:
    """Exact check that the matrix squares to itself."""
    fracs = [[Fraction(e) for e in row] for row in matrix.entries]
    denom = math.lcm(*(f.denominator for row in fracs for f in row))
    ints = [[int(f * denom) for f in row] for row in fracs]
    cols = list(zip(*ints))
    for i, row in enumerate(ints):
        for j, col in enumerate(cols):
            if sum(map(operator.mul, row, col)) != denom * ints[i][j]:
                return False
    return True


def _format_cell(entry) -> str:
    if isinstance(entry, IntPolynomial):
        return polynomial_to_coeff_string(entry)
    return str(entry)


def matrix_to_csv(matrix: WorldMatrix) -> str:
    """One matrix row per line; rationals as "p/q", polynomials as "c0;c1;..."."""
    return "\n".join(",".join(_format_cell(e) for e in row) for row in matrix.entries)


def _json_cell(entry):
    if isinstance(entry, IntPolynomial):
        return list(entry.coeffs)
    return str(entry)


def matrix_to_json(matrix: WorldMatrix) -> dict:
    kinds = {IntPolynomial: "polynomial", Fraction: "rational", int: "integer"}
    kind = kinds.get(type(matrix.entries[0][0]), "rational")
    return {
        "size": matrix.size,
        "kind": kind,
        "entries": [[_json_cell(e) for e in row] for row in matrix.entries],
    }
