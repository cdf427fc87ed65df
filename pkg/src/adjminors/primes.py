"""Admissible sets, the prime components P_W and the minimal primes of I(C).

For a special configuration the radical of I(C) is the intersection of the
prime ideals P_W over all admissible sets W.  P_W is generated by the
variables of W together with every 2-minor whose whole rectangle avoids W.
Components are stored with their full set of such inner minors, so
containment between them is a purely combinatorial test.

Two regions are supported for the inner minors.  COMPLEMENT uses V(C) minus W;
SUBCONFIG uses the vertices of the boxes that avoid W.  They agree whenever
every vertex outside W lies on such a box.  When they differ, SUBCONFIG is the
one whose components cover the whole zero set of I(C): on the 8-box ring the
complement region picks up the hole's corner and loses four components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .errors import CapExceeded, MismatchedConfiguration, NotAdmissible, NotSpecial
from .grid import Cell, Configuration, GeneralMinor, contains_edge, is_special
from .groebner import Binomial, format_binomial, minor_binomial

DEFAULT_ADMISSIBLE_CAP = 100_000

COMPLEMENT = "complement"  # region V(C) \ W
SUBCONFIG = "subconfig"  # region V(C'), C' the minors avoiding W
REGION_MODES = (COMPLEMENT, SUBCONFIG)


def _cells_key(cells: Iterable[Cell]) -> tuple:
    s = sorted(cells)
    return (len(s), s)


def is_admissible(config: Configuration, cells: Iterable[Cell]) -> bool:
    """Each minor meets ``cells`` in nothing or in a set containing one of its edges."""
    cells = frozenset(cells)
    if not cells <= config.vertex_set:
        return False
    for m in config.minors:
        if m.vertices & cells and not contains_edge(cells, m):
            return False
    return True


@dataclass(frozen=True)
class AdmissibleSet:
    config: Configuration = field(repr=False)
    cells: frozenset[Cell]

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.sorted_cells())


# The subsets of a box's four corners that are allowed to lie in W: nothing,
# one of the four edges, one of the four triples, or everything.  Corners are
# numbered a=0 b=1 c=2 d=3 as in UnitMinor.corners.
_LOCAL_PATTERNS = (0b0000, 0b0011, 0b1100, 0b0101, 0b1010,
                   0b0111, 0b1011, 0b1101, 0b1110, 0b1111)


def _admissible_masks(config: Configuration, cap: int) -> tuple[list[Cell], list[int]]:
    cells = sorted(config.vertex_set)
    bit = {c: k for k, c in enumerate(cells)}
    boxes = [tuple(bit[v] for v in m.corners) for m in config.minors]
    results: list[int] = []

    def local(mask: int, box) -> int:
        return sum(1 << k for k, b in enumerate(box) if mask >> b & 1)

    def spread(pattern: int, box) -> int:
        return sum(1 << b for k, b in enumerate(box) if pattern >> k & 1)

    def search(i: int, decided: int, chosen: int) -> None:
        if i == len(boxes):
            results.append(chosen)
            if len(results) > cap:
                raise CapExceeded(f"more than {cap} admissible sets")
            return
        box = boxes[i]
        fixed = local(decided, box)
        have = local(chosen, box)
        full = spread(0b1111, box)
        for pattern in _LOCAL_PATTERNS:
            if pattern & fixed != have:
                continue
            search(i + 1, decided | full, chosen | spread(pattern, box))

    search(0, 0, 0)
    return cells, results


def admissible_sets(config: Configuration, cap: int = DEFAULT_ADMISSIBLE_CAP) -> list[AdmissibleSet]:
    """All admissible subsets of V(C), ordered by size and then lexicographically."""
    cells, masks = _admissible_masks(config, cap)
    sets = [frozenset(c for k, c in enumerate(cells) if m >> k & 1) for m in masks]
    sets.sort(key=_cells_key)
    return [AdmissibleSet(config, s) for s in sets]


def inner_minors(region: Iterable[Cell]) -> frozenset[GeneralMinor]:
    """Every 2-minor whose full rectangle lies in ``region``."""
    region = frozenset(region)
    rows = sorted({c.row for c in region})
    cols = sorted({c.col for c in region})
    out = set()
    for r1, r2 in combinations(rows, 2):
        for c1, c2 in combinations(cols, 2):
            if Cell(r1, c1) not in region or Cell(r2, c2) not in region:
                continue
            if all(
                Cell(r, c) in region for r in range(r1, r2 + 1) for c in range(c1, c2 + 1)
            ):
                out.add(GeneralMinor(r1, r2, c1, c2))
    return frozenset(out)


@dataclass(frozen=True)
class PrimeComponent:
    """P_W: the variables of W plus the closed set of inner minors."""

    config: Configuration = field(repr=False, compare=False)
    W: frozenset[Cell]
    inner: frozenset[GeneralMinor]

    def sorted_W(self) -> list[Cell]:
        return sorted(self.W)

    def sorted_inner(self) -> list[GeneralMinor]:
        return sorted(self.inner)

    def binomials(self) -> list[Binomial]:
        return [minor_binomial(m) for m in self.sorted_inner()]

    def key(self) -> tuple:
        return _cells_key(self.W)


def _region(config: Configuration, W: frozenset[Cell], mode: str) -> frozenset[Cell]:
    if mode == COMPLEMENT:
        return config.vertex_set - W
    if mode == SUBCONFIG:
        return config.without(W).vertex_set
    raise ValueError(f"unknown region mode {mode!r}; expected one of {REGION_MODES}")


def prime_component(
    config: Configuration, W: AdmissibleSet | Iterable[Cell], mode: str = COMPLEMENT
) -> PrimeComponent:
    cells = W.cells if isinstance(W, AdmissibleSet) else frozenset(W)
    if isinstance(W, AdmissibleSet) and W.config != config:
        raise MismatchedConfiguration("admissible set belongs to another configuration")
    if not is_admissible(config, cells):
        raise NotAdmissible(f"{sorted(cells)} is not admissible for this configuration")
    return PrimeComponent(config, cells, inner_minors(_region(config, cells, mode)))


def component_contains(small: PrimeComponent, big: PrimeComponent) -> bool:
    """Whether P_V ⊆ P_W for small = P_V and big = P_W.

    Holds iff V ⊆ W and each inner minor of P_V that is missing from P_W
    meets W in a set containing one of its edges."""
    if small.config != big.config:
        raise MismatchedConfiguration("components were built over different configurations")
    if not small.W <= big.W:
        return False
    return all(contains_edge(big.W, m) for m in small.inner - big.inner)


@lru_cache(maxsize=64)
def _minimal(config: Configuration, cap: int, mode: str) -> tuple[PrimeComponent, ...]:
    # A component contains a variable exactly when it lies in W, so distinct
    # admissible sets give distinct ideals and Q ⊆ P forces W(Q) ⊆ W(P).
    # Sets arrive ordered by size, so every component below P is seen before
    # P, and by transitivity it is enough to compare P with the minimal ones.
    minimal: list[PrimeComponent] = []
    for w in admissible_sets(config, cap):
        below = [q for q in minimal if q.W < w.cells]
        p = prime_component(config, w, mode)
        if not any(component_contains(q, p) for q in below):
            minimal.append(p)
    return tuple(minimal)


def minimal_primes(
    config: Configuration, cap: int = DEFAULT_ADMISSIBLE_CAP, mode: str = COMPLEMENT
) -> list[PrimeComponent]:
    """The minimal prime components of a special configuration.

    Their intersection is the radical of I(C), and no component can be dropped.
    """
    if not is_special(config):
        raise NotSpecial("minimal primes are only described for special configurations")
    return list(_minimal(config, cap, mode))


def all_components(
    config: Configuration, cap: int = DEFAULT_ADMISSIBLE_CAP, mode: str = COMPLEMENT
) -> list[PrimeComponent]:
    return [prime_component(config, w, mode) for w in admissible_sets(config, cap)]


# -- output ----------------------------------------------------------------------


def component_document(p: PrimeComponent) -> dict:
    return {
        "W": [[c.row, c.col] for c in p.sorted_W()],
        "inner": [m.as_list() for m in p.sorted_inner()],
    }


def format_component(p: PrimeComponent, names: Mapping[Cell, str] | None = None) -> str:
    """E.g. ``(a,d,h,k, ej-fi)`` with labels, ``x[r,c]`` notation without."""
    def cell_name(c: Cell) -> str:
        return names[c] if names and c in names else str(c)

    variables = ",".join(cell_name(c) for c in p.sorted_W())
    minors = ", ".join(format_binomial(b, names) for b in p.binomials())
    if variables and minors:
        return f"({variables}, {minors})"
    return f"({variables or minors})"
