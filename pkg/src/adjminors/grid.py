"""Configurations of adjacent 2-minors and their combinatorics.

Coordinates are matrix style: ``Cell(row, col)`` with row 1 at the top and
rows growing downward.  A unit box (adjacent 2-minor) is identified by its
top-left cell, the *anchor*; its vertices are::

    a = (i, j)      b = (i, j+1)
    c = (i+1, j)    d = (i+1, j+1)

and its binomial is ``ad - bc``.  ``ad`` is the diagonal, ``bc`` the
anti-diagonal.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import NotConnected, ParseError


class Cell(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"x[{self.row},{self.col}]"


def _check_cell(cell: Cell) -> Cell:
    if cell.row < 1 or cell.col < 1:
        raise ParseError(f"cell {tuple(cell)} has an index below 1")
    return cell


class Choice(enum.Enum):
    """Which monomial of a minor is marked as its initial term."""

    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"

    def other(self) -> "Choice":
        return Choice.ANTIDIAGONAL if self is Choice.DIAGONAL else Choice.DIAGONAL


class UnitMinor(NamedTuple):
    anchor: Cell

    @property
    def corners(self) -> tuple[Cell, Cell, Cell, Cell]:
        """(a, b, c, d) = top-left, top-right, bottom-left, bottom-right."""
        i, j = self.anchor
        return Cell(i, j), Cell(i, j + 1), Cell(i + 1, j), Cell(i + 1, j + 1)

    @property
    def vertices(self) -> frozenset[Cell]:
        return frozenset(self.corners)

    @property
    def edges(self) -> tuple[frozenset[Cell], ...]:
        a, b, c, d = self.corners
        return (frozenset((a, b)), frozenset((a, c)), frozenset((b, d)), frozenset((c, d)))

    @property
    def diagonal(self) -> tuple[Cell, Cell]:
        a, _, _, d = self.corners
        return a, d

    @property
    def antidiagonal(self) -> tuple[Cell, Cell]:
        _, b, c, _ = self.corners
        return b, c

    def mark(self, choice: Choice) -> tuple[Cell, Cell]:
        return self.diagonal if choice is Choice.DIAGONAL else self.antidiagonal

    def general(self) -> "GeneralMinor":
        i, j = self.anchor
        return GeneralMinor(i, i + 1, j, j + 1)


@dataclass(frozen=True, order=True)
class GeneralMinor:
    """The 2-minor ``[row_lo, row_hi | col_lo, col_hi]``."""

    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    def __post_init__(self):
        if not (1 <= self.row_lo < self.row_hi and 1 <= self.col_lo < self.col_hi):
            raise ValueError(f"invalid minor bounds {self.as_list()}")

    def as_list(self) -> list[int]:
        return [self.row_lo, self.row_hi, self.col_lo, self.col_hi]

    @property
    def corners(self) -> tuple[Cell, Cell, Cell, Cell]:
        return (
            Cell(self.row_lo, self.col_lo),
            Cell(self.row_lo, self.col_hi),
            Cell(self.row_hi, self.col_lo),
            Cell(self.row_hi, self.col_hi),
        )

    @property
    def vertices(self) -> frozenset[Cell]:
        return frozenset(self.corners)

    @property
    def edges(self) -> tuple[frozenset[Cell], ...]:
        a, b, c, d = self.corners
        return (frozenset((a, b)), frozenset((a, c)), frozenset((b, d)), frozenset((c, d)))

    @property
    def diagonal(self) -> tuple[Cell, Cell]:
        a, _, _, d = self.corners
        return a, d

    @property
    def antidiagonal(self) -> tuple[Cell, Cell]:
        _, b, c, _ = self.corners
        return b, c

    def rectangle(self) -> Iterable[Cell]:
        for i in range(self.row_lo, self.row_hi + 1):
            for j in range(self.col_lo, self.col_hi + 1):
                yield Cell(i, j)


def contains_edge(cells: frozenset[Cell] | set[Cell], minor: UnitMinor | GeneralMinor) -> bool:
    return any(edge <= cells for edge in minor.edges)


def shared_vertex_count(p: Cell, q: Cell) -> int:
    """Number of vertices shared by the unit boxes anchored at p and q."""
    dr, dc = abs(p.row - q.row), abs(p.col - q.col)
    if dr > 1 or dc > 1:
        return 0
    return (2 - dr) * (2 - dc)


@dataclass(frozen=True)
class Configuration:
    """A finite set of unit boxes, stored as sorted anchors."""

    anchors: tuple[Cell, ...] = ()

    def __post_init__(self):
        cells = [_check_cell(Cell(*a)) for a in self.anchors]
        if len(set(cells)) != len(cells):
            raise ParseError("duplicate anchor in configuration")
        object.__setattr__(self, "anchors", tuple(sorted(cells)))

    @classmethod
    def of(cls, anchors: Iterable[tuple[int, int]]) -> "Configuration":
        return cls(tuple(Cell(*a) for a in anchors))

    def __len__(self) -> int:
        return len(self.anchors)

    def __iter__(self):
        return iter(self.anchors)

    def __contains__(self, anchor) -> bool:
        return anchor in self.anchor_set

    @cached_property
    def anchor_set(self) -> frozenset[Cell]:
        return frozenset(self.anchors)

    @property
    def minors(self) -> tuple[UnitMinor, ...]:
        return tuple(UnitMinor(a) for a in self.anchors)

    @cached_property
    def vertex_set(self) -> frozenset[Cell]:
        return frozenset(v for a in self.anchors for v in UnitMinor(a).corners)

    @cached_property
    def vertex_owners(self) -> dict[Cell, tuple[Cell, ...]]:
        owners: dict[Cell, list[Cell]] = defaultdict(list)
        for a in self.anchors:
            for v in UnitMinor(a).corners:
                owners[v].append(a)
        return {v: tuple(o) for v, o in owners.items()}

    def edge_neighbors(self, anchor: Cell) -> list[Cell]:
        i, j = anchor
        near = (Cell(i - 1, j), Cell(i, j - 1), Cell(i, j + 1), Cell(i + 1, j))
        return [n for n in near if n in self.anchor_set]

    def union(self, other: "Configuration") -> "Configuration":
        return Configuration(tuple(self.anchor_set | other.anchor_set))

    def without(self, cells: Iterable[Cell]) -> "Configuration":
        """Sub-configuration of the minors whose vertices avoid ``cells``."""
        cells = frozenset(cells)
        return Configuration(tuple(a for a in self.anchors if not (UnitMinor(a).vertices & cells)))


# -- parsing / serialisation ------------------------------------------------


def parse_configuration(text: str) -> Configuration:
    """Read an ASCII grid ('#' box, '.' empty) or a ``{"boxes": [...]}`` document."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed configuration document: {exc}") from None
        return configuration_from_document(doc)
    anchors = []
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    for i, line in enumerate(lines, start=1):
        for j, ch in enumerate(line.rstrip("\r"), start=1):
            if ch == "#":
                anchors.append(Cell(i, j))
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r} at line {i}, column {j}")
    return Configuration(tuple(anchors))


def configuration_from_document(doc) -> Configuration:
    if not isinstance(doc, dict) or not isinstance(doc.get("boxes"), list):
        raise ParseError('configuration document needs a "boxes" list')
    anchors = []
    for item in doc["boxes"]:
        if not (isinstance(item, list) and len(item) == 2 and all(type(x) is int for x in item)):
            raise ParseError(f"box entry {item!r} is not a [row, col] pair")
        anchors.append(Cell(*item))
    return Configuration(tuple(anchors))


def to_ascii(config: Configuration) -> str:
    if not config.anchors:
        return ""
    rows = max(a.row for a in config.anchors)
    cols = max(a.col for a in config.anchors)
    return "\n".join(
        "".join("#" if Cell(i, j) in config.anchor_set else "." for j in range(1, cols + 1))
        for i in range(1, rows + 1)
    )


def to_document(config: Configuration) -> dict:
    return {"boxes": [[a.row, a.col] for a in config.anchors]}


# -- structure ---------------------------------------------------------------


def connected_components(config: Configuration) -> list[Configuration]:
    """Edge-connected components, ordered by their smallest anchor."""
    seen: set[Cell] = set()
    components = []
    for start in config.anchors:
        if start in seen:
            continue
        seen.add(start)
        queue, members = deque([start]), [start]
        while queue:
            for n in config.edge_neighbors(queue.popleft()):
                if n not in seen:
                    seen.add(n)
                    members.append(n)
                    queue.append(n)
        components.append(Configuration(tuple(members)))
    return components


def is_connected(config: Configuration) -> bool:
    return len(config) > 0 and len(connected_components(config)) == 1


@dataclass(frozen=True)
class ComponentGraph:
    nodes: tuple[Configuration, ...]
    links: tuple[tuple[int, int, Cell], ...]  # (node i, node j, shared vertex), i < j

    def neighbors(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.nodes))}
        for i, j, _ in self.links:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def is_simple(self) -> bool:
        pairs = [(i, j) for i, j, _ in self.links]
        return len(pairs) == len(set(pairs))

    def four_cycle(self) -> tuple[int, int, int, int] | None:
        """Some 4-cycle (u, v, w, x) of distinct nodes, or None."""
        adj = self.neighbors()
        for u, w in combinations(range(len(self.nodes)), 2):
            common = sorted(adj[u] & adj[w])
            if len(common) >= 2:
                return u, common[0], w, common[1]
        return None


def component_graph(config: Configuration) -> ComponentGraph:
    nodes = tuple(connected_components(config))
    index = {a: k for k, comp in enumerate(nodes) for a in comp.anchors}
    links = []
    for v, owners in sorted(config.vertex_owners.items()):
        comps = sorted({index[a] for a in owners})
        for i, j in combinations(comps, 2):
            links.append((i, j, v))
    return ComponentGraph(nodes, tuple(links))


def is_chessboard(config: Configuration) -> bool:
    return all(
        shared_vertex_count(p, q) <= 1 for p, q in combinations(config.anchors, 2)
    )


def single_vertex_pairs(config: Configuration) -> list[tuple[Cell, Cell]]:
    return [
        (p, q)
        for p, q in combinations(config.anchors, 2)
        if shared_vertex_count(p, q) == 1
    ]


def is_special(config: Configuration) -> bool:
    for p, q in single_vertex_pairs(config):
        # a box sharing an edge with both diagonal neighbours sits at (p.row, q.col) or (q.row, p.col)
        if Cell(p.row, q.col) not in config and Cell(q.row, p.col) not in config:
            return False
    return True


def free_minors(config: Configuration) -> list[UnitMinor]:
    owners = config.vertex_owners
    result = []
    for m in config.minors:
        for pair in (m.diagonal, m.antidiagonal):
            if all(len(owners[v]) == 1 for v in pair):
                result.append(m)
                break
    return result


# -- motifs ------------------------------------------------------------------


class MotifKind(enum.Enum):
    SQUARE = "square"
    PIN = "pin"
    SADDLE = "saddle"


@dataclass(frozen=True)
class Motif:
    kind: MotifKind
    placement: tuple[Cell, ...]

    def __lt__(self, other):
        return (self.kind.value, self.placement) < (other.kind.value, other.placement)


_SYMMETRIES = (
    lambda r, c: (r, c),
    lambda r, c: (r, -c),
    lambda r, c: (-r, c),
    lambda r, c: (-r, -c),
    lambda r, c: (c, r),
    lambda r, c: (c, -r),
    lambda r, c: (-c, r),
    lambda r, c: (-c, -r),
)


def _orbit(pattern) -> list[tuple[tuple[int, int], ...]]:
    shapes = set()
    for f in _SYMMETRIES:
        pts = [f(r, c) for r, c in pattern]
        r0 = min(p[0] for p in pts)
        c0 = min(p[1] for p in pts)
        shapes.add(tuple(sorted((r - r0, c - c0) for r, c in pts)))
    return sorted(shapes)


_SQUARE = _orbit([(0, 0), (0, 1), (1, 0), (1, 1)])
_PIN = _orbit([(0, 0), (0, 1), (0, 2), (-1, 1)])


def _match(config: Configuration, shapes, kind: MotifKind) -> set[Motif]:
    found = set()
    for shape in shapes:
        r0, c0 = shape[0]
        for a in config.anchors:
            placed = tuple(Cell(a.row + r - r0, a.col + c - c0) for r, c in shape)
            if all(p in config.anchor_set for p in placed):
                found.add(Motif(kind, tuple(sorted(placed))))
    return found


def _saddles(config: Configuration) -> set[Motif]:
    # a straight run of >= 3 boxes with boxes attached on the same side of both ends
    found = set()
    present = config.anchor_set
    for transpose in (False, True):
        def at(line: int, pos: int) -> Cell:
            return Cell(pos, line) if transpose else Cell(line, pos)

        for a in config.anchors:
            line, start = (a.col, a.row) if transpose else (a.row, a.col)
            end = start + 1
            if at(line, end) not in present:
                continue
            while at(line, end + 1) in present:
                end += 1
                for side in (-1, 1):
                    ends = (at(line + side, start), at(line + side, end))
                    if all(e in present for e in ends):
                        run = [at(line, p) for p in range(start, end + 1)]
                        found.add(Motif(MotifKind.SADDLE, tuple(sorted(run + list(ends)))))
    return found


def detect_motifs(config: Configuration) -> set[Motif]:
    """All squares, pins and saddles contained in ``config``."""
    return (
        _match(config, _SQUARE, MotifKind.SQUARE)
        | _match(config, _PIN, MotifKind.PIN)
        | _saddles(config)
    )


# -- path / cycle shape --------------------------------------------------------


class ShapeKind(enum.Enum):
    LINE_PATH = "LinePath"
    MONOTONE_NE = "MonotoneNE"
    MONOTONE_SE = "MonotoneSE"
    NON_MONOTONE_PATH = "NonMonotonePath"
    CYCLE = "Cycle"
    OTHER = "Other"

    @property
    def is_monotone(self) -> bool:
        return self in (ShapeKind.LINE_PATH, ShapeKind.MONOTONE_NE, ShapeKind.MONOTONE_SE)

    @property
    def is_path(self) -> bool:
        return self.is_monotone or self is ShapeKind.NON_MONOTONE_PATH


@dataclass(frozen=True)
class PathShape:
    kind: ShapeKind
    ordering: tuple[Cell, ...]
    # every valid path ordering (a path has at most two); empty for cycles and Other
    orderings: tuple[tuple[Cell, ...], ...] = ()
    # corner pairs from the end-point formulas, one per ordering direction
    endpoints: tuple[tuple[Cell, Cell], ...] = ()


def _box(anchor: Cell) -> frozenset[Cell]:
    return UnitMinor(anchor).vertices


def is_path_ordering(ordering: tuple[Cell, ...]) -> bool:
    """Check the path condition: consecutive boxes share an edge and every earlier
    box meets the current one only inside that edge."""
    for i in range(1, len(ordering)):
        cur = _box(ordering[i])
        link = _box(ordering[i - 1]) & cur
        if len(link) != 2:
            return False
        for j in range(i - 1):
            if not (_box(ordering[j]) & cur) <= link:
                return False
    return True


def _monotone(seq: list[int]) -> int | None:
    """+1 non-decreasing, -1 non-increasing, 0 constant, None otherwise."""
    up = all(x <= y for x, y in zip(seq, seq[1:]))
    down = all(x >= y for x, y in zip(seq, seq[1:]))
    if up and down:
        return 0
    if up:
        return 1
    if down:
        return -1
    return None


def _endpoint_pairs(ordering: tuple[Cell, ...]) -> list[tuple[Cell, Cell]]:
    first, last = ordering[0], ordering[-1]
    a1, b1 = first
    ar, br = last
    increasing = (Cell(a1, b1), Cell(ar + 1, br + 1))
    decreasing = (Cell(a1, b1 + 1), Cell(ar + 1, br))
    if b1 < br:
        return [increasing]
    if b1 > br:
        return [decreasing]
    return [increasing, decreasing]


def classify_shape(config: Configuration) -> PathShape:
    if not is_connected(config):
        raise NotConnected("classify_shape needs a non-empty edge-connected configuration")
    degree = {a: len(config.edge_neighbors(a)) for a in config.anchors}
    if len(config) >= 3 and all(d == 2 for d in degree.values()):
        start = config.anchors[0]
        ordering, prev, cur = [start], None, start
        while True:
            nxt = min(n for n in config.edge_neighbors(cur) if n != prev)
            if nxt == start:
                break
            ordering.append(nxt)
            prev, cur = cur, nxt
        return PathShape(ShapeKind.CYCLE, tuple(ordering))
    if any(d > 2 for d in degree.values()):
        return PathShape(ShapeKind.OTHER, ())

    ends = sorted(a for a, d in degree.items() if d <= 1)
    walks = []
    for start in ends:
        ordering, seen, cur = [start], {start}, start
        while True:
            nxt = [n for n in config.edge_neighbors(cur) if n not in seen]
            if not nxt:
                break
            cur = nxt[0]
            seen.add(cur)
            ordering.append(cur)
        walks.append(tuple(ordering))
    valid = tuple(w for w in dict.fromkeys(walks) if is_path_ordering(w))
    if not valid:
        return PathShape(ShapeKind.OTHER, ())
    ordering = valid[0]
    rows = _monotone([a.row for a in ordering])
    cols = _monotone([a.col for a in ordering])
    if rows == 0 or cols == 0:
        kind = ShapeKind.LINE_PATH
    elif rows is None or cols is None:
        kind = ShapeKind.NON_MONOTONE_PATH
    elif rows == cols:
        kind = ShapeKind.MONOTONE_SE
    else:
        kind = ShapeKind.MONOTONE_NE
    endpoints: tuple[tuple[Cell, Cell], ...] = ()
    if kind.is_monotone:
        pairs: list[tuple[Cell, Cell]] = []
        for w in (ordering, ordering[::-1]):
            pairs.extend(p for p in _endpoint_pairs(w) if p not in pairs)
        endpoints = tuple(pairs)
    return PathShape(kind, ordering, valid, endpoints)
