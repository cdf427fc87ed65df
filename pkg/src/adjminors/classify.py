"""Primality, quadratic Gröbner bases and radicality of configuration ideals."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, CertificateVerificationFailed, DegreeCapExceeded
from .grid import (
    Cell,
    Choice,
    Configuration,
    ShapeKind,
    UnitMinor,
    classify_shape,
    component_graph,
    connected_components,
    is_special,
    shared_vertex_count,
)
from .groebner import (
    Binomial,
    Monomial,
    VariableRanking,
    configuration_ideal,
    marked_order,
    marks_are_initial,
    nonradical_witness_check,
    parse_binomial,
    s_pairs_reduce_to_zero,
)

Marking = dict[Cell, Choice]

DEFAULT_COMPONENT_CAP = 20


# -- primality -----------------------------------------------------------------


@dataclass(frozen=True)
class PrimalityReport:
    prime: bool
    reason: str
    edge_pair: tuple[Cell, Cell] | None = None
    # four anchors, one from each component on the 4-cycle
    four_cycle: tuple[Cell, ...] | None = None

    def __bool__(self) -> bool:
        return self.prime


def is_prime(config: Configuration) -> PrimalityReport:
    """I(C) is prime iff C is a chessboard and its component graph has no 4-cycle."""
    for p, q in itertools.combinations(config.anchors, 2):
        if shared_vertex_count(p, q) == 2:
            return PrimalityReport(False, "two minors share an edge", edge_pair=(p, q))
    graph = component_graph(config)
    cycle = graph.four_cycle()
    if cycle is not None:
        anchors = tuple(graph.nodes[k].anchors[0] for k in cycle)
        return PrimalityReport(False, "component graph has a cycle of length 4", four_cycle=anchors)
    return PrimalityReport(True, "chessboard configuration whose component graph has no 4-cycle")


# -- quadratic Gröbner bases ---------------------------------------------------


@dataclass(frozen=True)
class QuadraticCertificate:
    marking: Marking
    ranking: VariableRanking
    verified: bool = False

    def marks(self) -> dict[Cell, tuple[Cell, Cell]]:
        return {a: UnitMinor(a).mark(c) for a, c in self.marking.items()}


def _coprime(marks: list[tuple[Cell, Cell]]) -> bool:
    cells = [v for m in marks for v in m]
    return len(cells) == len(set(cells))


def _component_choices(component: Configuration) -> list[Choice] | None:
    """Choices whose marks are pairwise coprime inside one monotone component."""
    shape = classify_shape(component)
    if not shape.kind.is_monotone:
        return None
    return [
        c for c in (Choice.DIAGONAL, Choice.ANTIDIAGONAL)
        if _coprime([UnitMinor(a).mark(c) for a in component.anchors])
    ]


def verify_certificate(config: Configuration, marking: Marking, ranking: VariableRanking) -> bool:
    """Marks are lex-initial and every S-pair of the minors reduces to zero."""
    if not marks_are_initial(ranking, marking):
        return False
    gens = [ranking.normalize(g) for g in configuration_ideal(config)]
    return s_pairs_reduce_to_zero(gens, ranking)


def has_quadratic_gb(
    config: Configuration, component_cap: int = DEFAULT_COMPONENT_CAP
) -> QuadraticCertificate | None:
    """A verified marking certificate if some variable order gives a quadratic GB."""
    if not config:
        return QuadraticCertificate({}, VariableRanking(()), True)
    components = connected_components(config)
    options = []
    for comp in components:
        choices = _component_choices(comp)
        if not choices:
            return None
        options.append(choices)
    free = sum(1 for o in options if len(o) > 1)
    if free > component_cap:
        raise CapExceeded(f"{free} free components exceed the component cap {component_cap}")
    # product() walks assignments in lexicographic order, Diagonal first
    for assignment in itertools.product(*options):
        marking = {a: c for comp, c in zip(components, assignment) for a in comp.anchors}
        marks = [UnitMinor(a).mark(c) for a, c in marking.items()]
        if not _coprime(marks):
            continue
        ranking = marked_order(config, marking)
        if not verify_certificate(config, marking, ranking):
            raise CertificateVerificationFailed(
                f"coprime marking {_marking_text(marking)} did not verify as a Gröbner basis"
            )
        marking = dict(sorted(marking.items()))
        return QuadraticCertificate(marking, ranking, True)
    return None


def _marking_text(marking: Marking) -> str:
    return ", ".join(f"{a.row},{a.col}:{c.value}" for a, c in sorted(marking.items()))


# -- radicality ----------------------------------------------------------------


class RadicalStatus(enum.Enum):
    RADICAL = "Radical"
    NOT_RADICAL = "NotRadical"
    CONDITIONALLY_RADICAL = "ConditionallyRadical"
    UNKNOWN = "Unknown"


_STRENGTH = {
    RadicalStatus.RADICAL: 3,
    RadicalStatus.CONDITIONALLY_RADICAL: 2,
    RadicalStatus.UNKNOWN: 1,
    RadicalStatus.NOT_RADICAL: 0,
}


@dataclass(frozen=True)
class RadicalVerdict:
    status: RadicalStatus
    reason: str
    # f with f not in I(C) and f^2 in I(C), when one was found
    witness: Binomial | None = None
    # the sub-configuration on which the witness was checked
    local: Configuration | None = None


@dataclass(frozen=True)
class _Pattern:
    name: str
    boxes: tuple[tuple[int, int], ...]
    labels: dict[str, tuple[int, int]]
    witness: str


_PATTERNS = (
    _Pattern(
        "square",
        ((1, 1), (1, 2), (2, 1), (2, 2)),
        dict(k=(1, 1), a=(1, 2), b=(1, 3), c=(2, 1), d=(2, 2), e=(2, 3), g=(3, 1), h=(3, 2), i=(3, 3)),
        "kdi-aeg",
    ),
    _Pattern(
        "pin",
        ((2, 1), (2, 2), (2, 3), (1, 2)),
        dict(a=(1, 2), b=(1, 3), c=(2, 1), d=(2, 2), e=(2, 3), f=(2, 4), g=(3, 1), h=(3, 2), i=(3, 3), j=(3, 4)),
        "acej-bcfh",
    ),
    _Pattern(
        "8-cycle",
        ((1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2), (3, 3)),
        {chr(ord("a") + 4 * r + c): (r + 1, c + 1) for r in range(4) for c in range(4)},
        "b^2*hino-abhjno",
    ),
)

_SIGNED_PERMS = tuple(
    (swap, sr, sc) for swap in (False, True) for sr in (1, -1) for sc in (1, -1)
)


@lru_cache(maxsize=None)
def _oriented(pattern_index: int) -> tuple[tuple[frozenset[Cell], Binomial], ...]:
    """The pattern in all 8 orientations, anchored at offset (0, 0), with its
    witness carried along.  Works in doubled coordinates so that box centres
    and vertices transform together."""
    pattern = _PATTERNS[pattern_index]
    out = []
    seen = set()
    for swap, sr, sc in _SIGNED_PERMS:
        def move(r2, c2):
            if swap:
                r2, c2 = c2, r2
            return sr * r2, sc * c2

        centres = [move(2 * r + 1, 2 * c + 1) for r, c in pattern.boxes]
        dr = 1 - min(r for r, _ in centres)
        dc = 1 - min(c for _, c in centres)
        boxes = frozenset(Cell((r + dr - 1) // 2, (c + dc - 1) // 2) for r, c in centres)
        if boxes in seen:
            continue
        labels = {}
        for name, (r, c) in pattern.labels.items():
            r2, c2 = move(2 * r, 2 * c)
            labels[name] = Cell((r2 + dr) // 2, (c2 + dc) // 2)
        seen.add(boxes)
        out.append((boxes, parse_binomial(pattern.witness, labels)))
    return tuple(out)


def _shift(cell: Cell, by: Cell) -> Cell:
    return Cell(cell.row + by.row, cell.col + by.col)


def _shift_binomial(b: Binomial, by: Cell) -> Binomial:
    def mono(m):
        return Monomial.of({_shift(v, by): e for v, e in m.items})

    return Binomial(mono(b.lead), None if b.tail is None else mono(b.tail))


@lru_cache(maxsize=None)
def _pattern_witness_holds(pattern_index: int, orientation: int) -> bool:
    boxes, witness = _oriented(pattern_index)[orientation]
    # move away from row/col 0 so the local configuration is valid
    local = Configuration.of(_shift(b, Cell(1, 1)) for b in boxes)
    return nonradical_witness_check(local, _shift_binomial(witness, Cell(1, 1)))


def _lifts(config: Configuration, local: Configuration) -> bool:
    """Killing every variable outside V(local) sends I(config) onto I(local):
    each remaining box has an outside vertex in both of its terms."""
    inside = local.vertex_set
    for a in config.anchors:
        if a in local:
            continue
        m = UnitMinor(a)
        if all(v in inside for v in m.diagonal) or all(v in inside for v in m.antidiagonal):
            return False
    return True


def find_local_witness(config: Configuration) -> tuple[str, Configuration, Binomial] | None:
    """A sub-configuration (square, pin or 8-cycle) whose non-radicality
    witness is also a witness for the whole configuration."""
    anchors = config.anchor_set
    for idx, pattern in enumerate(_PATTERNS):
        for k, (boxes, witness) in enumerate(_oriented(idx)):
            for base in config.anchors:
                # translate so the pattern's smallest box lands on `base`
                first = min(boxes)
                by = Cell(base.row - first.row, base.col - first.col)
                placed = [_shift(b, by) for b in boxes]
                if not all(b in anchors for b in placed):
                    continue
                local = Configuration.of(placed)
                if not _lifts(config, local):
                    continue
                if not _pattern_witness_holds(idx, k):
                    continue
                return pattern.name, local, _shift_binomial(witness, by)
    return None


def _combine(verdicts: list[RadicalVerdict]) -> RadicalVerdict:
    worst = min(verdicts, key=lambda v: _STRENGTH[v.status])
    if worst.status is RadicalStatus.RADICAL:
        return RadicalVerdict(RadicalStatus.RADICAL, "every component is radical")
    return worst


def _component_verdict(component: Configuration) -> RadicalVerdict:
    kind = classify_shape(component).kind
    if kind.is_monotone:
        return RadicalVerdict(RadicalStatus.RADICAL, "monotone path: quadratic Gröbner basis")
    if kind is ShapeKind.NON_MONOTONE_PATH:
        return RadicalVerdict(
            RadicalStatus.CONDITIONALLY_RADICAL,
            "non-monotone path: radical provided I(C) has no embedded primes (not checked)",
        )
    if kind is ShapeKind.CYCLE:
        return RadicalVerdict(
            RadicalStatus.UNKNOWN,
            "cycle: conjecturally radical exactly when its length is at least 12 (not asserted)",
        )
    return RadicalVerdict(
        RadicalStatus.NOT_RADICAL,
        "special connected configuration that is neither a path nor a cycle contains a pin",
    )


@lru_cache(maxsize=256)
def radical_verdict(config: Configuration) -> RadicalVerdict:
    """Decide radicality where a certificate or an explicit witness settles it.

    Order of evidence: a quadratic Gröbner basis (radical); a square, pin or
    8-cycle whose witness lifts to C (not radical); for special C the
    per-component path/cycle analysis.  Anything else is Unknown.
    """
    if not config:
        return RadicalVerdict(RadicalStatus.RADICAL, "empty configuration: zero ideal")
    try:
        cert = has_quadratic_gb(config)
    except CapExceeded:
        cert = None
    if cert is not None:
        return RadicalVerdict(
            RadicalStatus.RADICAL,
            "quadratic Gröbner basis with squarefree initial terms",
        )
    try:
        found = find_local_witness(config)
    except DegreeCapExceeded:
        found = None
    if found is not None:
        name, local, witness = found
        return RadicalVerdict(
            RadicalStatus.NOT_RADICAL,
            f"contains a {name} whose witness f satisfies f not in I, f^2 in I",
            witness,
            local,
        )
    if not is_special(config):
        return RadicalVerdict(
            RadicalStatus.UNKNOWN,
            "not special: components share variables, no component-wise criterion applies",
        )
    return _combine([_component_verdict(c) for c in connected_components(config)])
