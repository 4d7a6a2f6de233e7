"""Web diagrams, their world orbits, and colouring-based reconstruction.

A web diagram is a finite set of edges strung between vertical pegs.
Every edge runs from a lower-numbered peg to a higher-numbered one and
carries one endpoint height on each; on every peg the endpoint heights
form a permutation of 1..p where p is the number of endpoints there.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ArityMismatch,
    BadRange,
    DuplicateSlot,
    EdgeNotInDiagram,
    HeightNotPermutation,
    LengthMismatch,
    NotSurjective,
    PegOrderViolation,
    WorldTooLarge,
)

DEFAULT_WORLD_GUARD = 10**6


class Edge(NamedTuple):
    left_peg: int
    right_peg: int
    left_height: int
    right_height: int


@dataclass(frozen=True)
class WebDiagram:
    """A validated diagram: canonically sorted edges plus a peg count.

    The peg count is part of the diagram's identity, so trailing pegs
    without endpoints are preserved by every operation.
    """

    edges: tuple[Edge, ...]
    num_pegs: int

    def __post_init__(self) -> None:
        edges = tuple(sorted(Edge(*e) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        _validate_edges(edges, self.num_pegs)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def peg_heights(self) -> tuple[int, ...]:
        """Endpoint counts per peg (the height range on each peg)."""
        counts = [0] * self.num_pegs
        for e in self.edges:
            counts[e.left_peg - 1] += 1
            counts[e.right_peg - 1] += 1
        return tuple(counts)

    def peg_pair_counts(self) -> Counter:
        """Multiplicity of edges on each (left_peg, right_peg) pair."""
        return Counter((e.left_peg, e.right_peg) for e in self.edges)

    def edge_key(self) -> tuple[tuple[int, int, int, int], ...]:
        """Plain-tuple form of the sorted edge list, usable as a dict key."""
        return tuple(tuple(e) for e in self.edges)


def _validate_edges(edges: tuple[Edge, ...], num_pegs: int) -> None:
    if num_pegs < 0:
        raise BadRange("peg count must be non-negative")
    slots: dict[tuple[int, int], Edge] = {}
    for e in edges:
        if not (1 <= e.left_peg < e.right_peg <= num_pegs):
            raise PegOrderViolation(f"edge {tuple(e)} violates 1 <= left < right <= {num_pegs}")
        if e.left_height < 1 or e.right_height < 1:
            raise HeightNotPermutation(f"edge {tuple(e)} has a height below 1")
        for slot in ((e.left_peg, e.left_height), (e.right_peg, e.right_height)):
            if slot in slots:
                raise DuplicateSlot(f"edges {tuple(slots[slot])} and {tuple(e)} share slot {slot}")
            slots[slot] = e
    heights_per_peg: dict[int, list[int]] = {}
    for peg, height in slots:
        heights_per_peg.setdefault(peg, []).append(height)
    for peg, heights in heights_per_peg.items():
        if sorted(heights) != list(range(1, len(heights) + 1)):
            raise HeightNotPermutation(
                f"peg {peg} carries heights {sorted(heights)}, expected 1..{len(heights)}"
            )


def validate_diagram(raw_edges: Iterable[Sequence[int]], num_pegs: int | None = None) -> WebDiagram:
    """Build a WebDiagram from raw 4-tuples, inferring the peg count if absent."""
    edges = tuple(Edge(*map(int, e)) for e in raw_edges)
    if num_pegs is None:
        num_pegs = max((e.right_peg for e in edges), default=0)
    return WebDiagram(edges, num_pegs)


def stack(bottom: WebDiagram, top: WebDiagram) -> WebDiagram:
    """Place `top` above `bottom`, shifting its heights by the peg loads below."""
    num_pegs = max(bottom.num_pegs, top.num_pegs)
    offsets = bottom.peg_heights + (0,) * (num_pegs - bottom.num_pegs)
    shifted = [
        Edge(
            e.left_peg,
            e.right_peg,
            e.left_height + offsets[e.left_peg - 1],
            e.right_height + offsets[e.right_peg - 1],
        )
        for e in top.edges
    ]
    return WebDiagram(bottom.edges + tuple(shifted), num_pegs)


def subweb(diagram: WebDiagram, edges: Iterable[Edge]) -> WebDiagram:
    """Restrict to an edge subset and compress heights per peg.

    Pegs keep their positions (the peg count is unchanged); on each peg
    the surviving heights are renumbered 1..k preserving relative order.
    """
    subset = [Edge(*e) for e in edges]
    present = set(diagram.edges)
    for e in subset:
        if e not in present:
            raise EdgeNotInDiagram(f"edge {tuple(e)} is not in the diagram")
    kept: dict[int, list[int]] = {}
    for e in subset:
        kept.setdefault(e.left_peg, []).append(e.left_height)
        kept.setdefault(e.right_peg, []).append(e.right_height)
    rank = {
        (peg, h): i
        for peg, heights in kept.items()
        for i, h in enumerate(sorted(heights), 1)
    }
    compressed = [
        Edge(e.left_peg, e.right_peg, rank[(e.left_peg, e.left_height)], rank[(e.right_peg, e.right_height)])
        for e in subset
    ]
    return WebDiagram(tuple(compressed), diagram.num_pegs)


def apply_permutations(diagram: WebDiagram, family: Sequence[Sequence[int]]) -> WebDiagram:
    """Move the endpoint at height j on peg i to height family[i-1][j-1]."""
    heights = diagram.peg_heights
    if len(family) != diagram.num_pegs:
        raise ArityMismatch(f"family covers {len(family)} pegs, diagram has {diagram.num_pegs}")
    for peg, perm in enumerate(family, 1):
        if sorted(perm) != list(range(1, heights[peg - 1] + 1)):
            raise ArityMismatch(f"family entry for peg {peg} is not a permutation of 1..{heights[peg - 1]}")
    moved = [
        Edge(
            e.left_peg,
            e.right_peg,
            family[e.left_peg - 1][e.left_height - 1],
            family[e.right_peg - 1][e.right_height - 1],
        )
        for e in diagram.edges
    ]
    return WebDiagram(tuple(moved), diagram.num_pegs)


@dataclass(frozen=True)
class Colouring:
    """A surjective assignment of colours 1..colours to edge positions.

    The assignment indexes edges in the diagram's canonical sorted order.
    """

    assignment: tuple[int, ...]
    colours: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if self.colours < 1:
            raise BadRange("colour count must be at least 1")
        used = set(self.assignment)
        if any(c < 1 or c > self.colours for c in used):
            raise BadRange("colour value outside 1..colours")
        if used != set(range(1, self.colours + 1)):
            raise NotSurjective(f"assignment {self.assignment} does not use all of 1..{self.colours}")


@lru_cache(maxsize=None)
def surjection_tuples(length: int, colours: int) -> tuple[tuple[int, ...], ...]:
    """All surjections {1..length} -> {1..colours} as assignment tuples.

    Enumerated as set partitions (restricted growth strings) crossed with
    the orderings of their blocks, so the total work is colours! * S(length,
    colours) rather than colours^length.
    """
    if length < 1 or colours < 1 or colours > length:
        raise BadRange(f"need 1 <= colours <= length, got colours={colours} length={length}")
    out: list[tuple[int, ...]] = []
    for rgs in _restricted_growth_strings(length, colours):
        for perm in itertools.permutations(range(1, colours + 1)):
            out.append(tuple(perm[v] for v in rgs))
    return tuple(out)


def _restricted_growth_strings(length: int, blocks: int) -> Iterator[tuple[int, ...]]:
    # strings s with s[0]=0 and s[i] <= max(prefix)+1, using exactly `blocks` values
    string = [0] * length

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            if mx == blocks - 1:
                yield tuple(string)
            return
        top = min(mx + 1, blocks - 1)
        for v in range(top + 1):
            # remaining positions must still be able to introduce the missing values
            if blocks - 1 - max(mx, v) <= length - i - 1:
                string[i] = v
                yield from rec(i + 1, max(mx, v))

    yield from rec(0, -1)


def surjective_colourings(edge_count: int, colours: int) -> Iterator[Colouring]:
    """Stream every surjective colouring of `edge_count` edges exactly once."""
    for assignment in surjection_tuples(edge_count, colours):
        yield Colouring(assignment, colours)


def peg_slots(diagram: WebDiagram) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Per peg, the endpoint list sorted by height.

    Each endpoint is (edge_index, field) where field is the position of
    that endpoint's height inside the edge tuple (2 = left, 3 = right).
    """
    per_peg: list[list[tuple[int, int, int]]] = [[] for _ in range(diagram.num_pegs)]
    for idx, e in enumerate(diagram.edges):
        per_peg[e.left_peg - 1].append((e.left_height, idx, 2))
        per_peg[e.right_peg - 1].append((e.right_height, idx, 3))
    return tuple(
        tuple((idx, field) for _h, idx, field in sorted(lst)) for lst in per_peg
    )


def restacked_edge_key(
    diagram: WebDiagram,
    slots: tuple[tuple[tuple[int, int], ...], ...],
    assignment: Sequence[int],
) -> tuple[tuple[int, int, int, int], ...]:
    """Sorted plain-tuple edge list of the reconstruction of `diagram`.

    Stacking the height-compressed colour classes in colour order is
    equivalent to re-ranking each peg's endpoints by (colour, old height);
    the stable sort below does exactly that because `slots` is pre-sorted
    by height.
    """
    rows = [list(e) for e in diagram.edges]
    for lst in slots:
        ordered = sorted(lst, key=lambda t: assignment[t[0]])
        for height, (idx, field) in enumerate(ordered, 1):
            rows[idx][field] = height
    return tuple(sorted(map(tuple, rows)))


def reconstruct(diagram: WebDiagram, colouring: Colouring) -> WebDiagram:
    """Stack the colour classes of `diagram` in colour order.

    Each colour class is height-compressed before stacking, so the result
    lies in the same web world as the input.
    """
    if len(colouring.assignment) != diagram.edge_count:
        raise LengthMismatch(
            f"colouring has {len(colouring.assignment)} entries for {diagram.edge_count} edges"
        )
    key = restacked_edge_key(diagram, peg_slots(diagram), colouring.assignment)
    return WebDiagram(tuple(Edge(*row) for row in key), diagram.num_pegs)


class WebWorld:
    """The orbit of a diagram under per-peg height permutations.

    Diagrams are stored in lexicographic order of their sorted edge lists,
    which fixes the row and column indexing of the world's matrices.
    """

    def __init__(self, diagrams: Iterable[WebDiagram]):
        unique = {d.edge_key(): d for d in diagrams}
        self.diagrams: tuple[WebDiagram, ...] = tuple(
            unique[k] for k in sorted(unique)
        )
        if not self.diagrams:
            raise BadRange("a web world needs at least one diagram")
        first = self.diagrams[0]
        pair_counts = first.peg_pair_counts()
        for d in self.diagrams[1:]:
            if d.num_pegs != first.num_pegs or d.peg_pair_counts() != pair_counts:
                raise BadRange("world diagrams disagree on pegs or edge multiplicities")
        self.num_pegs = first.num_pegs
        self.edge_count = first.edge_count
        self.index: dict[tuple, int] = {
            d.edge_key(): i for i, d in enumerate(self.diagrams)
        }

    def __len__(self) -> int:
        return len(self.diagrams)

    def __iter__(self) -> Iterator[WebDiagram]:
        return iter(self.diagrams)

    def __getitem__(self, i: int) -> WebDiagram:
        return self.diagrams[i]

    def __contains__(self, diagram: WebDiagram) -> bool:
        return diagram.edge_key() in self.index

    def index_of(self, diagram: WebDiagram) -> int:
        try:
            return self.index[diagram.edge_key()]
        except KeyError:
            raise BadRange("diagram is not a member of this world") from None


def predicted_world_size(diagram: WebDiagram) -> int:
    """Orbit size by the product formula: per-peg factorials over
    parallel-edge factorials."""
    size = 1
    for p in diagram.peg_heights:
        size *= math.factorial(p)
    for count in diagram.peg_pair_counts().values():
        size //= math.factorial(count)
    return size


def web_world(diagram: WebDiagram, max_size: int = DEFAULT_WORLD_GUARD) -> WebWorld:
    """Materialize the full orbit of `diagram`.

    Generation fills each peg's height slots group by group: parallel
    edges claim their left-peg slots as an unordered combination (they
    are then identified with those slots in ascending order) and their
    right-peg slots as an ordered arrangement. Every member of the world
    is produced exactly once, so no deduplication pass is needed.
    """
    expected = predicted_world_size(diagram)
    if expected > max_size:
        raise WorldTooLarge(f"world has {expected} diagrams, guard is {max_size}")
    pair_counts = diagram.peg_pair_counts()
    per_peg_choices: list[list[dict]] = []
    for peg in range(1, diagram.num_pegs + 1):
        groups: list[tuple[tuple[str, int], int, bool]] = []
        for (a, b), count in sorted(pair_counts.items()):
            if a == peg:
                groups.append((("out", b), count, False))
            if b == peg:
                groups.append((("in", a), count, True))
        slots = tuple(range(1, diagram.peg_heights[peg - 1] + 1))
        per_peg_choices.append(list(_fill_groups(slots, groups)))
    members: list[WebDiagram] = []
    for combo in itertools.product(*per_peg_choices):
        edges: list[Edge] = []
        for (a, b), count in sorted(pair_counts.items()):
            lefts = combo[a - 1][("out", b)]
            rights = combo[b - 1][("in", a)]
            edges.extend(Edge(a, b, lefts[t], rights[t]) for t in range(count))
        members.append(WebDiagram(tuple(edges), diagram.num_pegs))
    world = WebWorld(members)
    assert len(world) == expected, "orbit generation disagrees with the size formula"
    return world


def _fill_groups(
    slots: tuple[int, ...], groups: list[tuple[tuple[str, int], int, bool]]
) -> Iterator[dict]:
    if not groups:
        yield {}
        return
    key, size, ordered = groups[0]
    rest = groups[1:]
    pick = itertools.permutations if ordered else itertools.combinations
    for chosen in pick(slots, size):
        taken = set(chosen)
        remaining = tuple(s for s in slots if s not in taken)
        for sub in _fill_groups(remaining, rest):
            sub[key] = chosen
            yield sub


def diagram_to_json(diagram: WebDiagram) -> dict:
    return {"n": diagram.num_pegs, "edges": [list(e) for e in diagram.edges]}


def diagram_from_json(obj: dict) -> WebDiagram:
    return validate_diagram(obj["edges"], obj.get("n"))
