"""Block decomposition of a diagram and its naturally labeled poset.

A diagram splits uniquely into indecomposable blocks: the strongly
connected components of the digraph that points edge e at edge e'
whenever some endpoint of e sits strictly below an endpoint of e' on a
shared peg. Blocks inherit that below-relation; closing it reflexively
and transitively gives the decomposition poset, whose linear-extension
descents drive the closed forms for diagonal matrix entries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .diagram import Edge, WebDiagram, WebWorld, subweb
from .errors import BadRange, LabelNotOne, RepeatedBlocks
from .matrices import IntPolynomial, X

_ONE_PLUS_X = IntPolynomial((1, 1))


@dataclass(frozen=True)
class Block:
    """One indecomposable component of a diagram.

    `edges` are the component's edges as they appear in the parent
    diagram; `normalized` is their height-compressed subweb (None for
    posets built without an underlying diagram).
    """

    label: int
    edges: tuple[Edge, ...]
    normalized: WebDiagram | None


@dataclass(frozen=True)
class DecompositionPoset:
    """Blocks labeled 1..k with a reflexive-transitive order matrix.

    The labeling is natural: whenever block i strictly precedes block j
    in the order, i < j.
    """

    blocks: tuple[Block, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.blocks)
        if len(self.leq) != k or any(len(row) != k for row in self.leq):
            raise BadRange("order matrix shape does not match the block count")
        for i in range(k):
            if not self.leq[i][i]:
                raise BadRange("order matrix must be reflexive")
            for j in range(k):
                if i != j and self.leq[i][j]:
                    if self.leq[j][i]:
                        raise BadRange("order matrix must be antisymmetric")
                    if i > j:
                        raise BadRange("labeling is not natural (strict relation goes downward)")
                    for t in range(k):
                        if self.leq[j][t] and not self.leq[i][t]:
                            raise BadRange("order matrix must be transitive")

    @property
    def size(self) -> int:
        return len(self.blocks)

    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        """All strict relations as 1-based (smaller, larger) label pairs."""
        return tuple(
            (i + 1, j + 1)
            for i in range(self.size)
            for j in range(self.size)
            if i != j and self.leq[i][j]
        )

    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """Strict pairs with no strict element in between (Hasse edges)."""
        strict = set(self.strict_pairs())
        return tuple(
            sorted(
                (a, b)
                for a, b in strict
                if not any((a, t) in strict and (t, b) in strict for t in range(a + 1, b))
            )
        )

    @classmethod
    def from_relations(cls, size: int, relations) -> "DecompositionPoset":
        """Build an abstract poset from 1-based generating pairs."""
        leq = [[i == j for j in range(size)] for i in range(size)]
        for a, b in relations:
            if not (1 <= a <= size and 1 <= b <= size) or a == b:
                raise BadRange(f"relation ({a},{b}) is not a strict pair within 1..{size}")
            leq[a - 1][b - 1] = True
        for t in range(size):
            for i in range(size):
                if leq[i][t]:
                    for j in range(size):
                        if leq[t][j]:
                            leq[i][j] = True
        blocks = tuple(Block(i + 1, (), None) for i in range(size))
        return cls(blocks, tuple(tuple(row) for row in leq))


def _edge_below_matrix(edges: tuple[Edge, ...]) -> list[list[bool]]:
    count = len(edges)
    endpoints = [((e.left_peg, e.left_height), (e.right_peg, e.right_height)) for e in edges]
    below = [[False] * count for _ in range(count)]
    for i in range(count):
        for j in range(count):
            if i != j:
                below[i][j] = any(
                    p1 == p2 and h1 < h2
                    for (p1, h1) in endpoints[i]
                    for (p2, h2) in endpoints[j]
                )
    return below


def decompose(diagram: WebDiagram) -> tuple[Block, ...]:
    """Split a diagram into naturally labeled indecomposable blocks.

    Components are emitted in priority-Kahn order: among the components
    whose predecessors are all emitted, the one containing the smallest
    (peg, height) endpoint goes first. This is always a linear extension
    of the block order, so stacking the blocks in label order rebuilds
    the diagram.
    """
    if diagram.edge_count == 0:
        raise BadRange("cannot decompose an empty diagram")
    edges = diagram.edges
    count = len(edges)
    below = _edge_below_matrix(edges)
    reach = [row[:] for row in below]
    for t in range(count):
        for i in range(count):
            if reach[i][t]:
                for j in range(count):
                    if reach[t][j]:
                        reach[i][j] = True
    component_of = [-1] * count
    components: list[list[int]] = []
    for i in range(count):
        for c, members in enumerate(components):
            j = members[0]
            if reach[i][j] and reach[j][i]:
                members.append(i)
                component_of[i] = c
                break
        else:
            component_of[i] = len(components)
            components.append([i])
    total = len(components)
    successors: list[set[int]] = [set() for _ in range(total)]
    indegree = [0] * total
    for i in range(count):
        for j in range(count):
            if below[i][j] and component_of[i] != component_of[j]:
                if component_of[j] not in successors[component_of[i]]:
                    successors[component_of[i]].add(component_of[j])
    for c in range(total):
        for d in successors[c]:
            indegree[d] += 1

    def min_endpoint(c: int) -> tuple[int, int]:
        return min(
            (peg, h)
            for i in components[c]
            for (peg, h) in (
                (edges[i].left_peg, edges[i].left_height),
                (edges[i].right_peg, edges[i].right_height),
            )
        )

    available = [c for c in range(total) if indegree[c] == 0]
    order: list[int] = []
    while available:
        available.sort(key=min_endpoint)
        current = available.pop(0)
        order.append(current)
        for d in successors[current]:
            indegree[d] -= 1
            if indegree[d] == 0:
                available.append(d)
    blocks = []
    for label, c in enumerate(order, 1):
        block_edges = tuple(sorted(edges[i] for i in components[c]))
        blocks.append(Block(label, block_edges, subweb(diagram, block_edges)))
    return tuple(blocks)


def decomposition_poset(diagram: WebDiagram) -> DecompositionPoset:
    blocks = decompose(diagram)
    k = len(blocks)
    edge_block = {e: i for i, b in enumerate(blocks) for e in b.edges}
    edges = diagram.edges
    below = _edge_below_matrix(edges)
    leq = [[i == j for j in range(k)] for i in range(k)]
    for i, ei in enumerate(edges):
        for j, ej in enumerate(edges):
            if below[i][j] and edge_block[ei] != edge_block[ej]:
                leq[edge_block[ei]][edge_block[ej]] = True
    for t in range(k):
        for i in range(k):
            if leq[i][t]:
                for j in range(k):
                    if leq[t][j]:
                        leq[i][j] = True
    return DecompositionPoset(blocks, tuple(tuple(row) for row in leq))


def linear_extensions(poset: DecompositionPoset) -> tuple[tuple[int, ...], ...]:
    """Every order-preserving arrangement of the block labels."""
    k = poset.size
    predecessors = [
        [i for i in range(k) if i != j and poset.leq[i][j]] for j in range(k)
    ]
    out: list[tuple[int, ...]] = []
    used = [False] * k
    sequence: list[int] = []

    def extend() -> None:
        if len(sequence) == k:
            out.append(tuple(v + 1 for v in sequence))
            return
        for v in range(k):
            if not used[v] and all(used[u] for u in predecessors[v]):
                used[v] = True
                sequence.append(v)
                extend()
                sequence.pop()
                used[v] = False

    extend()
    return tuple(out)


def descents(extension: tuple[int, ...]) -> int:
    return sum(1 for a, b in zip(extension, extension[1:]) if a > b)


_DIRECT_CHECK_LIMIT = 60_000


def order_preserving_count(poset: DecompositionPoset, m: int) -> int:
    """Number of order-preserving maps from the poset into a chain of m values.

    Computed from linear-extension descents; small instances are recounted
    by direct map enumeration as a built-in consistency check.
    """
    if m < 0:
        raise BadRange("chain size must be non-negative")
    p = poset.size
    value = sum(
        math.comb(p + m - 1 - descents(ext), p) for ext in linear_extensions(poset)
    )
    if p >= 1 and m**p <= _DIRECT_CHECK_LIMIT:
        strict = poset.strict_pairs()
        direct = sum(
            1
            for f in itertools.product(range(1, m + 1), repeat=p)
            if all(f[a - 1] <= f[b - 1] for a, b in strict)
        )
        if direct != value:
            raise RuntimeError(
                f"order-preserving map count mismatch: descents gave {value}, enumeration {direct}"
            )
    return value


def surjective_order_preserving_count(poset: DecompositionPoset, m: int) -> int:
    """Order-preserving maps onto a chain of m values, hitting every value."""
    if m < 0:
        raise BadRange("chain size must be non-negative")
    return sum(
        math.comb(m, k) * (-1) ** (m - k) * order_preserving_count(poset, k)
        for k in range(m + 1)
    )


def _require_distinct_blocks(poset: DecompositionPoset) -> None:
    seen = set()
    for block in poset.blocks:
        if block.normalized is None:
            continue
        key = (block.normalized.edges, block.normalized.num_pegs)
        if key in seen:
            raise RepeatedBlocks("two blocks are identical; diagonal closed forms do not apply")
        seen.add(key)


def diagonal_colouring_polynomial(poset: DecompositionPoset) -> IntPolynomial:
    """Closed form for a diagonal colouring entry from the diagram's poset."""
    _require_distinct_blocks(poset)
    p = poset.size
    if p < 1:
        raise BadRange("poset must have at least one block")
    total = IntPolynomial()
    for ext in linear_extensions(poset):
        d = descents(ext)
        total = total + X ** (1 + d) * _ONE_PLUS_X ** (p - 1 - d)
    return total


def diagonal_mixing_value(poset: DecompositionPoset) -> Fraction:
    """Closed form for a diagonal mixing entry from the diagram's poset."""
    _require_distinct_blocks(poset)
    p = poset.size
    if p < 1:
        raise BadRange("poset must have at least one block")
    return sum(
        (
            Fraction((-1) ** descents(ext), p * math.comb(p - 1, descents(ext)))
            for ext in linear_extensions(poset)
        ),
        Fraction(0),
    )


def world_posets(world: WebWorld) -> tuple[DecompositionPoset, ...]:
    """The decomposition poset of each member diagram, in world order."""
    return tuple(decomposition_poset(d) for d in world)


def traces_via_posets(world: WebWorld) -> tuple[IntPolynomial, Fraction]:
    """World traces of the colouring and mixing matrices, via posets only.

    Sums the diagonal closed forms over every member's poset, so no
    off-diagonal entry (and no matrix) is ever materialized. Requires a
    multiplicity-free world (no parallel edges) and distinct blocks in
    every member.
    """
    if any(v > 1 for v in world.diagrams[0].peg_pair_counts().values()):
        raise LabelNotOne("world has parallel edges; poset trace formulas do not apply")
    colouring_total = IntPolynomial()
    mixing_total = Fraction(0)
    for diagram in world:
        poset = decomposition_poset(diagram)
        colouring_total = colouring_total + diagonal_colouring_polynomial(poset)
        mixing_total += diagonal_mixing_value(poset)
    return colouring_total, mixing_total


def poset_to_json(poset: DecompositionPoset) -> dict:
    return {"k": poset.size, "relations": [list(pair) for pair in poset.cover_pairs()]}
