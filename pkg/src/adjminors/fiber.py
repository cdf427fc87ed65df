"""Contingency tables on a configuration, adjacent moves and connectivity.

A table assigns non-negative integers to the cells of V(C).  An adjacent move
adds or subtracts the pattern +1 on a box's diagonal and -1 on its
anti-diagonal.  Moves preserve row and column sums inside each connected
component, and the fiber of a table is what the moves reach from it.
"""

from __future__ import annotations

import enum
import json
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .classify import RadicalStatus, radical_verdict
from .errors import CapExceeded, NotSpecial, ParseError, SupportViolation
from .grid import Cell, Configuration, UnitMinor, connected_components, is_special
from .primes import COMPLEMENT, DEFAULT_ADMISSIBLE_CAP, PrimeComponent, minimal_primes

DEFAULT_NODE_CAP = 100_000


@dataclass(frozen=True)
class Table:
    """Sparse table: sorted (cell, value) pairs with zero entries dropped.

    Cells of V(C) without an entry hold 0."""

    entries: tuple[tuple[Cell, int], ...] = ()

    @classmethod
    def of(cls, values: Mapping | Iterable[tuple]) -> "Table":
        items = values.items() if isinstance(values, Mapping) else values
        out: dict[Cell, int] = {}
        for cell, v in items:
            cell = Cell(*cell)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"table entry at {cell} must be a non-negative integer, got {v!r}")
            if cell in out:
                raise ValueError(f"duplicate table entry at {cell}")
            out[cell] = v
        return cls(tuple(sorted((c, v) for c, v in out.items() if v)))

    def as_dict(self) -> dict[Cell, int]:
        return dict(self.entries)

    def get(self, cell: Cell) -> int:
        return self.as_dict().get(cell, 0)

    @property
    def support(self) -> frozenset[Cell]:
        return frozenset(c for c, _ in self.entries)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.entries)

    def check_support(self, config: Configuration) -> "Table":
        outside = self.support - config.vertex_set
        if outside:
            raise SupportViolation(f"table has entries outside V(C): {sorted(outside)}")
        return self


@dataclass(frozen=True)
class Move:
    box: UnitMinor
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("move sign must be +1 or -1")

    def delta(self) -> dict[Cell, int]:
        out = {v: self.sign for v in self.box.diagonal}
        out.update({v: -self.sign for v in self.box.antidiagonal})
        return out

    def apply(self, table: Table) -> Table | None:
        """The moved table, or None if an entry would turn negative."""
        values = table.as_dict()
        for cell, d in self.delta().items():
            v = values.get(cell, 0) + d
            if v < 0:
                return None
            values[cell] = v
        return Table.of(values)


def moves(config: Configuration) -> list[Move]:
    return [Move(m, s) for m in config.minors for s in (1, -1)]


@dataclass(frozen=True)
class ComponentMargins:
    row_index: tuple[int, ...]
    rows: tuple[int, ...]
    col_index: tuple[int, ...]
    cols: tuple[int, ...]


@dataclass(frozen=True)
class MarginVector:
    components: tuple[ComponentMargins, ...]


def _restricted_margins(table: Mapping[Cell, int], cells: frozenset[Cell]) -> ComponentMargins:
    row_index = tuple(sorted({c.row for c in cells}))
    col_index = tuple(sorted({c.col for c in cells}))
    rows = {r: 0 for r in row_index}
    cols = {c: 0 for c in col_index}
    for cell in cells:
        v = table.get(cell, 0)
        rows[cell.row] += v
        cols[cell.col] += v
    return ComponentMargins(
        row_index, tuple(rows[r] for r in row_index), col_index, tuple(cols[c] for c in col_index)
    )


def margins(table: Table, config: Configuration) -> MarginVector:
    """Row and column sums of the table restricted to each connected component."""
    table.check_support(config)
    values = table.as_dict()
    return MarginVector(
        tuple(_restricted_margins(values, comp.vertex_set) for comp in connected_components(config))
    )


def bfs_fiber(config: Configuration, table: Table, node_cap: int = DEFAULT_NODE_CAP) -> frozenset[Table]:
    """Every table reachable from ``table`` by moves that keep entries non-negative."""
    table.check_support(config)
    all_moves = moves(config)
    seen = {table}
    queue = deque([table])
    while queue:
        current = queue.popleft()
        for move in all_moves:
            nxt = move.apply(current)
            if nxt is None or nxt in seen:
                continue
            seen.add(nxt)
            if len(seen) > node_cap:
                raise CapExceeded(f"fiber has more than {node_cap} tables")
            queue.append(nxt)
    return frozenset(seen)


def pair_in_component(t1: Table, t2: Table, component: PrimeComponent) -> bool:
    """Whether t1 - t2 is accounted for by the prime component P_W.

    Either both tables put positive mass on W, or the tables differ only on
    V(C') and have equal restricted margins on every component of C', where
    C' is the set of minors avoiding W.
    """
    config = component.config
    t1.check_support(config)
    t2.check_support(config)
    a, b = t1.as_dict(), t2.as_dict()
    W = component.W
    if sum(a.get(c, 0) for c in W) >= 1 and sum(b.get(c, 0) for c in W) >= 1:
        return True
    rest = config.without(W)
    diff = {c for c in t1.support | t2.support if a.get(c, 0) != b.get(c, 0)}
    if not diff <= rest.vertex_set:
        return False
    return all(
        _restricted_margins(a, comp.vertex_set) == _restricted_margins(b, comp.vertex_set)
        for comp in connected_components(rest)
    )


class Connectivity(enum.Enum):
    CONNECTED = "Connected"
    DISCONNECTED = "Disconnected"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ConnectivityVerdict:
    status: Connectivity
    evidence: str
    # the minimal prime whose condition fails, for criterion-based Disconnected
    component: PrimeComponent | None = None
    # number of tables explored when the BFS oracle decided
    explored: int | None = None


def connected(
    t1: Table,
    t2: Table,
    config: Configuration,
    oracle_fallback: bool = False,
    node_cap: int = DEFAULT_NODE_CAP,
    admissible_cap: int = DEFAULT_ADMISSIBLE_CAP,
    mode: str = COMPLEMENT,
) -> ConnectivityVerdict:
    """Decide whether adjacent moves connect t1 and t2.

    Failing the condition of any minimal prime proves disconnection.  Passing
    all of them proves connection only when I(C) is known to be radical;
    otherwise the answer is Unknown, or the BFS result with ``oracle_fallback``.
    """
    if not is_special(config):
        raise NotSpecial("the connectivity criterion needs a special configuration")
    t1.check_support(config)
    t2.check_support(config)
    for p in minimal_primes(config, admissible_cap, mode):
        if not pair_in_component(t1, t2, p):
            names = ",".join(f"({c.row},{c.col})" for c in p.sorted_W()) or "empty set"
            return ConnectivityVerdict(
                Connectivity.DISCONNECTED, f"condition fails for the prime component with W = {names}", p
            )
    verdict = radical_verdict(config)
    if verdict.status is RadicalStatus.RADICAL:
        return ConnectivityVerdict(Connectivity.CONNECTED, "all minimal prime conditions hold and I(C) is radical")
    if not oracle_fallback:
        return ConnectivityVerdict(
            Connectivity.UNKNOWN,
            f"all minimal prime conditions hold but radicality is {verdict.status.value}",
        )
    fiber = bfs_fiber(config, t1, node_cap)
    status = Connectivity.CONNECTED if t2 in fiber else Connectivity.DISCONNECTED
    return ConnectivityVerdict(status, "decided by exhaustive search of the fiber", explored=len(fiber))


def random_walk(config: Configuration, table: Table, steps: int, seed: int) -> Table:
    """Propose ``steps`` random moves; proposals that go negative are skipped.

    Uses Python's Mersenne Twister seeded with ``seed``, so the trajectory is
    reproducible."""
    table.check_support(config)
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    minors = config.minors
    if not minors:
        return table
    for _ in range(steps):
        move = Move(rng.choice(minors), rng.choice((1, -1)))
        nxt = move.apply(table)
        if nxt is not None:
            table = nxt
    return table


# -- documents -----------------------------------------------------------------


def table_document(table: Table) -> dict:
    return {"entries": [[c.row, c.col, v] for c, v in table.entries]}


def table_from_document(doc) -> Table:
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise ParseError('table document needs an "entries" list')
    triples = []
    for item in doc["entries"]:
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(x, int) for x in item)):
            raise ParseError(f"table entry must be [row, col, value], got {item!r}")
        r, c, v = item
        if r < 1 or c < 1:
            raise ParseError(f"table cell ({r},{c}) has an index below 1")
        triples.append(((r, c), v))
    try:
        return Table.of(triples)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_table(text: str) -> Table:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"table is not valid JSON: {exc.msg}") from exc
    return table_from_document(doc)


def format_table(table: Table, config: Configuration) -> str:
    """Values laid out on the grid, with '·' for cells outside V(C)."""
    cells = config.vertex_set | table.support
    if not cells:
        return ""
    values = table.as_dict()
    rows = range(min(c.row for c in cells), max(c.row for c in cells) + 1)
    cols = range(min(c.col for c in cells), max(c.col for c in cells) + 1)
    width = max(1, max((len(str(v)) for v in values.values()), default=1))
    lines = []
    for r in rows:
        parts = []
        for c in cols:
            cell = Cell(r, c)
            text = str(values.get(cell, 0)) if cell in config.vertex_set else "·"
            parts.append(text.rjust(width))
        lines.append(" ".join(parts))
    return "\n".join(lines)
