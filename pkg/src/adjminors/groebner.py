"""Exact Gröbner bases for binomial and monomial ideals under lex orders.

All elements have the shape ``u - v`` or ``u`` with ``u``, ``v`` monomials, so
S-polynomials and reductions never create coefficients other than +1/-1.
Elements are normalised so that the lead term has coefficient +1.

Internally a monomial is packed into one Python int, one byte per variable,
with the highest-ranked variable in the most significant byte.  Integer
comparison is then exactly the lex order of the ranking, and divisibility,
lcm and coprimality are a handful of bit operations.  Each byte keeps its top
bit as a guard, so no single exponent may exceed 127; the degree caps keep
every intermediate monomial far below that.
"""

from __future__ import annotations

import heapq
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import DegreeCapExceeded, ParseError, VerificationFailed
from .grid import Cell, Choice, Configuration, GeneralMinor, UnitMinor

DEFAULT_DEGREE_CAP = 24
DEFAULT_SATURATION_CAP = 30
_MAX_EXPONENT = 127

AUX = "t"  # the elimination variable used by saturate()

Variable = Hashable


def _var_key(v):
    return (0, v) if isinstance(v, str) else (1, tuple(v))


def _var_str(v) -> str:
    return v if isinstance(v, str) else f"x[{v[0]},{v[1]}]"


@dataclass(frozen=True)
class Monomial:
    """A monomial as a sorted tuple of (variable, exponent) pairs, zeros dropped."""

    items: tuple = ()

    @classmethod
    def of(cls, exponents: Mapping[Variable, int]) -> "Monomial":
        for v, e in exponents.items():
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
        return cls(tuple(sorted(((v, e) for v, e in exponents.items() if e), key=lambda t: _var_key(t[0]))))

    @classmethod
    def from_vars(cls, variables: Iterable[Variable]) -> "Monomial":
        counts: dict = defaultdict(int)
        for v in variables:
            counts[v] += 1
        return cls.of(counts)

    def as_dict(self) -> dict:
        return dict(self.items)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.items)

    def variables(self) -> set:
        return {v for v, _ in self.items}

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = self.as_dict()
        for v, e in other.items:
            out[v] = out.get(v, 0) + e
        return Monomial.of(out)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial.of({v: e * k for v, e in self.items})

    def divides(self, other: "Monomial") -> bool:
        od = other.as_dict()
        return all(od.get(v, 0) >= e for v, e in self.items)

    def __str__(self) -> str:
        if not self.items:
            return "1"
        return "*".join(_var_str(v) for v, e in self.items for _ in range(e))


ONE = Monomial()


@dataclass(frozen=True)
class Binomial:
    """``lead - tail``; ``tail`` None means the pure monomial ``lead``."""

    lead: Monomial
    tail: Monomial | None = None

    def __post_init__(self):
        if self.tail is not None and self.tail == self.lead:
            raise ValueError("binomial with equal terms is zero")

    @property
    def is_monomial(self) -> bool:
        return self.tail is None

    @property
    def degree(self) -> int:
        return max(self.lead.degree, self.tail.degree if self.tail is not None else 0)

    def variables(self) -> set:
        out = self.lead.variables()
        if self.tail is not None:
            out |= self.tail.variables()
        return out

    def to_polynomial(self) -> "Polynomial":
        terms = {self.lead: 1}
        if self.tail is not None:
            terms[self.tail] = -1
        return Polynomial(terms)

    def negated(self) -> "Binomial":
        if self.tail is None:
            return self
        return Binomial(self.tail, self.lead)

    def __str__(self) -> str:
        return format_binomial(self)


@dataclass(frozen=True)
class Polynomial:
    """Sparse integer polynomial; only needed for squares of binomials."""

    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[m1 * m2] += c1 * c2
        return Polynomial({m: c for m, c in out.items() if c})

    def is_zero(self) -> bool:
        return not self.terms


def square(f: Binomial | Polynomial) -> Polynomial:
    p = f.to_polynomial() if isinstance(f, Binomial) else f
    return p * p


@dataclass(frozen=True)
class VariableRanking:
    """A total order of variables; position 0 is the largest in lex comparisons."""

    order: tuple

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("variable ranking lists a variable twice")

    def rank(self, v) -> int:
        return self._index()[v]

    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {v: k for k, v in enumerate(self.order)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def __contains__(self, v) -> bool:
        return v in self._index()

    def __len__(self) -> int:
        return len(self.order)

    def with_top(self, v) -> "VariableRanking":
        return VariableRanking((v,) + tuple(x for x in self.order if x != v))

    def greater(self, m1: Monomial, m2: Monomial) -> bool:
        """True iff m1 > m2 in the lex order of this ranking."""
        ring = _Ring(self)
        return ring.encode(m1) > ring.encode(m2)

    def normalize(self, b: Binomial) -> Binomial:
        if b.tail is None or self.greater(b.lead, b.tail):
            return b
        return b.negated()


def default_ranking(variables: Iterable) -> VariableRanking:
    """Row-major ranking: smaller (row, col) ranks higher."""
    return VariableRanking(tuple(sorted(set(variables), key=_var_key)))


class _Ring:
    """Packed-integer arithmetic for the monomials of one ranking."""

    def __init__(self, ranking: VariableRanking):
        self.ranking = ranking
        n = len(ranking.order)
        self.n = n
        self.shift = {v: 8 * (n - 1 - k) for k, v in enumerate(ranking.order)}
        self.ones = sum(1 << (8 * k) for k in range(n))
        self.guard = self.ones << 7
        self.low = self.ones * 0x7F

    def encode(self, m: Monomial) -> int:
        x = 0
        for v, e in m.items:
            if v not in self.shift:
                raise ValueError(f"variable {_var_str(v)} is not in the ranking")
            if e > _MAX_EXPONENT:
                raise DegreeCapExceeded(f"exponent {e} exceeds the packed limit")
            x |= e << self.shift[v]
        return x

    def decode(self, x: int) -> Monomial:
        items = []
        for v, s in self.shift.items():
            e = (x >> s) & 0xFF
            if e:
                items.append((v, e))
        return Monomial(tuple(sorted(items, key=lambda t: _var_key(t[0]))))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        sel = ((((a | self.guard) - b) & self.guard) >> 7) * 0x7F
        return (a & sel) | (b & (self.low ^ sel))

    def support(self, a: int) -> int:
        return ((a | self.guard) - self.ones) & self.guard

    def coprime(self, a: int, b: int) -> bool:
        return not (self.support(a) & self.support(b))

    def degree(self, a: int) -> int:
        return sum(a.to_bytes(self.n, "little")) if self.n else 0


class _Engine:
    """Buchberger completion over packed binomials ``(lead, tail | None)``."""

    def __init__(self, ring: _Ring, degree_cap: int):
        if degree_cap > _MAX_EXPONENT:
            raise ValueError(f"degree cap above {_MAX_EXPONENT} is not supported")
        self.ring = ring
        self.cap = degree_cap
        self.leads: list[int] = []
        self.tails: list[int | None] = []
        self.grows: list[bool] = []

    def _check(self, m: int) -> None:
        if self.ring.degree(m) > self.cap:
            raise DegreeCapExceeded(
                f"intermediate monomial {self.ring.decode(m)} exceeds degree cap {self.cap}"
            )

    def add(self, lead: int, tail: int | None) -> int:
        self._check(lead)
        if tail is not None:
            self._check(tail)
        self.leads.append(lead)
        self.tails.append(tail)
        self.grows.append(tail is not None and self.ring.degree(tail) > self.ring.degree(lead))
        return len(self.leads) - 1

    def reduce_monomial(self, m: int | None, skip: int = -1) -> int | None:
        """Normal form of a monomial: a monomial, or None for zero."""
        divides = self.ring.divides
        leads, tails = self.leads, self.tails
        while m is not None:
            for k, lead in enumerate(leads):
                if k != skip and divides(lead, m):
                    tail = tails[k]
                    if tail is None:
                        return None
                    m = m - lead + tail
                    if self.grows[k]:
                        self._check(m)
                    break
            else:
                return m
        return None

    def reduce_pair(self, p: int | None, q: int | None) -> tuple[int, int | None] | None:
        """Normal form of ``p - q`` as a normalised element, or None for zero."""
        p = self.reduce_monomial(p)
        q = self.reduce_monomial(q)
        if p == q:
            return None
        if p is None:
            return q, None
        if q is None:
            return p, None
        return (p, q) if p > q else (q, p)

    def s_terms(self, i: int, j: int) -> tuple[int | None, int | None]:
        lcm = self.ring.lcm(self.leads[i], self.leads[j])
        ti, tj = self.tails[i], self.tails[j]
        a = None if ti is None else lcm - self.leads[i] + ti
        b = None if tj is None else lcm - self.leads[j] + tj
        return a, b

    def complete(self) -> None:
        ring = self.ring
        pending: set[tuple[int, int]] = set()
        heap: list = []

        def push(i: int, j: int) -> None:
            lcm = ring.lcm(self.leads[i], self.leads[j])
            pending.add((i, j))
            heapq.heappush(heap, (ring.degree(lcm), lcm, i, j))

        n = len(self.leads)
        for j in range(n):
            for i in range(j):
                push(i, j)
        while heap:
            _, lcm, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            if ring.coprime(self.leads[i], self.leads[j]):
                continue
            if self._chain(i, j, lcm, pending):
                continue
            a, b = self.s_terms(i, j)
            if a is not None:
                self._check(a)
            if b is not None:
                self._check(b)
            h = self.reduce_pair(a, b)
            if h is None:
                continue
            new = self.add(*h)
            for k in range(new):
                push(k, new)

    def _chain(self, i: int, j: int, lcm: int, pending: set) -> bool:
        divides = self.ring.divides
        for k, lead in enumerate(self.leads):
            if k == i or k == j or not divides(lead, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def interreduce(self) -> list[tuple[int, int | None]]:
        ring = self.ring
        order = sorted(range(len(self.leads)), key=lambda k: self.leads[k])
        keep: list[int] = []
        for k in order:
            lead = self.leads[k]
            if any(ring.divides(self.leads[m], lead) for m in keep):
                continue
            keep.append(k)
        minimal = _Engine(ring, self.cap)
        for k in keep:
            minimal.add(self.leads[k], self.tails[k])
        out = []
        for idx in range(len(minimal.leads)):
            tail = minimal.tails[idx]
            if tail is not None:
                tail = minimal.reduce_monomial(tail, skip=idx)
            out.append((minimal.leads[idx], tail))
        out.sort(key=lambda e: e[0], reverse=True)
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Binomial, ...]
    ranking: VariableRanking
    reduced: bool = True

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def as_set(self) -> frozenset[Binomial]:
        return frozenset(self.elements)

    @property
    def max_degree(self) -> int:
        return max((b.degree for b in self.elements), default=0)

    def leads(self) -> list[Monomial]:
        return [b.lead for b in self.elements]


def _load(engine: _Engine, gens: Iterable[Binomial]) -> None:
    ring = engine.ring
    seen = set()
    for g in gens:
        lead = ring.encode(g.lead)
        tail = None if g.tail is None else ring.encode(g.tail)
        if tail is not None and tail > lead:
            lead, tail = tail, lead
        if (lead, tail) in seen:
            continue
        seen.add((lead, tail))
        engine.add(lead, tail)


def _unpack(ring: _Ring, elems) -> tuple[Binomial, ...]:
    return tuple(
        Binomial(ring.decode(lead), None if tail is None else ring.decode(tail)) for lead, tail in elems
    )


def reduced_basis(
    gens: Iterable[Binomial], ranking: VariableRanking | None = None, degree_cap: int = DEFAULT_DEGREE_CAP
) -> GroebnerBasis:
    """Reduced lex Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ranking is None:
        ranking = default_ranking(v for g in gens for v in g.variables())
    ring = _Ring(ranking)
    engine = _Engine(ring, degree_cap)
    _load(engine, gens)
    engine.complete()
    return GroebnerBasis(_unpack(ring, engine.interreduce()), ranking, True)


def _as_polynomial(f: Binomial | Polynomial | Monomial) -> Polynomial:
    if isinstance(f, Binomial):
        return f.to_polynomial()
    if isinstance(f, Monomial):
        return Polynomial({f: 1})
    return f


def normal_form(f: Binomial | Polynomial | Monomial, basis: GroebnerBasis) -> Polynomial:
    ring = _Ring(basis.ranking)
    engine = _Engine(ring, _MAX_EXPONENT)
    _load(engine, basis.elements)
    out: dict = defaultdict(int)
    for m, c in _as_polynomial(f).terms.items():
        r = engine.reduce_monomial(ring.encode(m))
        if r is not None:
            out[r] += c
    return Polynomial({ring.decode(m): c for m, c in out.items() if c})


def member(f: Binomial | Polynomial | Monomial, basis: GroebnerBasis) -> bool:
    """Ideal membership: the normal form modulo a reduced basis vanishes."""
    return normal_form(f, basis).is_zero()


def s_pairs_reduce_to_zero(gens: Iterable[Binomial], ranking: VariableRanking) -> bool:
    """Buchberger's test on ``gens`` as given: every S-pair reduces to 0 modulo gens.

    No pair criteria are applied, so this is an independent check of the
    coprime-initials shortcut used elsewhere."""
    ring = _Ring(ranking)
    engine = _Engine(ring, _MAX_EXPONENT)
    _load(engine, gens)
    n = len(engine.leads)
    for j in range(n):
        for i in range(j):
            if engine.reduce_pair(*engine.s_terms(i, j)) is not None:
                return False
    return True


def saturate(
    gens: Iterable[Binomial],
    degree_cap: int = DEFAULT_SATURATION_CAP,
    variables: Iterable | None = None,
    ranking: VariableRanking | None = None,
) -> list[Binomial]:
    """Generators of ``(gens) : (product of variables)^infinity``.

    Adjoins ``t`` above every other variable together with ``t * prod(x) - 1``
    and keeps the t-free elements of the reduced lex basis.
    """
    gens = list(gens)
    if variables is None:
        variables = {v for g in gens for v in g.variables()}
    variables = set(variables)
    if ranking is None:
        ranking = default_ranking(variables)
    full = ranking.with_top(AUX)
    product = Monomial.of({AUX: 1, **{v: 1 for v in variables}})
    basis = reduced_basis(gens + [Binomial(product, ONE)], full, degree_cap)
    return [b for b in basis.elements if AUX not in b.variables()]


# -- ideals of configurations ------------------------------------------------


def minor_binomial(minor: UnitMinor | GeneralMinor) -> Binomial:
    """``diagonal - antidiagonal`` of a minor, as written (not order-normalised)."""
    return Binomial(Monomial.from_vars(minor.diagonal), Monomial.from_vars(minor.antidiagonal))


def configuration_ideal(config: Configuration) -> list[Binomial]:
    return [minor_binomial(m) for m in config.minors]


def configuration_basis(
    config: Configuration, ranking: VariableRanking | None = None, degree_cap: int = DEFAULT_DEGREE_CAP
) -> GroebnerBasis:
    if ranking is None:
        ranking = default_ranking(config.vertex_set)
    return reduced_basis(configuration_ideal(config), ranking, degree_cap)


def nonradical_witness_check(
    config: Configuration,
    f: Binomial | Polynomial,
    ranking: VariableRanking | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> bool:
    """True iff f is not in I(config) but f^2 is, so I(config) is not radical."""
    basis = configuration_basis(config, ranking, degree_cap)
    return not member(f, basis) and member(square(f), basis)


# -- orders realising a marking -----------------------------------------------


def _chain_order(cells: list[Cell], larger_first: dict[tuple[Cell, Cell], bool]) -> list[Cell]:
    """Order one row of cells, largest first.

    The row splits into runs of neighbours joined by a constraint.  Inside a
    run cells are inserted left to right: at the back when the left neighbour
    must rank higher, at the front otherwise.  Runs keep their left-to-right
    position, so unconstrained cells are not moved."""
    order: list[Cell] = []
    run: list[Cell] = []
    for k, cell in enumerate(cells):
        key = (cells[k - 1], cell) if k else None
        if key not in larger_first:
            order.extend(run)
            run = [cell]
        elif larger_first[key]:
            run.append(cell)
        else:
            run.insert(0, cell)
    order.extend(run)
    return order


def marked_order(config: Configuration, marking: Mapping[Cell, Choice]) -> VariableRanking:
    """A ranking of V(config) whose lex order makes every mark an initial monomial.

    Rows are ranked top to bottom.  Inside row i only the minors anchored in
    row i constrain neighbouring cells: a diagonal mark needs x[i,j] above
    x[i,j+1], an anti-diagonal mark the reverse.
    """
    missing = [a for a in config.anchors if a not in marking]
    if missing:
        raise ValueError(f"no mark given for minors at {missing}")
    by_row: dict[int, list[Cell]] = defaultdict(list)
    for v in config.vertex_set:
        by_row[v.row].append(v)
    constraint: dict[tuple[Cell, Cell], bool] = {}
    for a in config.anchors:
        left, right = Cell(a.row, a.col), Cell(a.row, a.col + 1)
        constraint[(left, right)] = marking[a] is Choice.DIAGONAL
    order: list[Cell] = []
    for row in sorted(by_row):
        order.extend(_chain_order(sorted(by_row[row]), constraint))
    ranking = VariableRanking(tuple(order))
    bad = [a for a in config.anchors if not marks_are_initial(ranking, {a: marking[a]})]
    if bad:
        raise VerificationFailed(f"constructed order does not realise the marks at {bad}")
    return ranking


def marks_are_initial(ranking: VariableRanking, marking: Mapping[Cell, Choice]) -> bool:
    for anchor, choice in marking.items():
        m = UnitMinor(anchor)
        mark = Monomial.from_vars(m.mark(choice))
        other = Monomial.from_vars(m.mark(choice.other()))
        if not ranking.greater(mark, other):
            return False
    return True


# -- text format ---------------------------------------------------------------

_FACTOR = re.compile(r"x\[\s*(\d+)\s*,\s*(\d+)\s*\]")


_LETTER = re.compile(r"([a-z])(?:\^(\d+))?")
_LETTERS = re.compile(r"(?:[a-z](?:\^\d+)?)+")


def _parse_term(text: str, labels: Mapping[str, Cell] | None) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    factors = []
    for part in text.split("*"):
        part = part.strip()
        m = _FACTOR.fullmatch(part)
        if m:
            factors.append(Cell(int(m.group(1)), int(m.group(2))))
            continue
        if labels and _LETTERS.fullmatch(part):
            # labelled shorthand such as "acej" or "b^2hino"
            letters = _LETTER.findall(part)
            if all(ch in labels for ch, _ in letters):
                for ch, exp in letters:
                    factors.extend([labels[ch]] * int(exp or 1))
                continue
        raise ParseError(f"cannot read factor {part!r}")
    return Monomial.from_vars(factors)


def parse_binomial(text: str, labels: Mapping[str, Cell] | None = None) -> Binomial:
    """Read ``term - term`` or a single term; terms are ``*``-joined ``x[r,c]``.

    With ``labels`` the fixture letters may be used, e.g. ``acej-bcfh`` or
    ``b^2*hino-abhjno``."""
    compact = "".join(text.split())
    parts = compact.split("-")
    if len(parts) == 1:
        return Binomial(_parse_term(parts[0], labels))
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise ParseError(f"expected 'term - term', got {text!r}")
    lead, tail = _parse_term(parts[0], labels), _parse_term(parts[1], labels)
    if lead == tail:
        raise ParseError("binomial terms are equal (the zero polynomial)")
    return Binomial(lead, tail)


def _format_monomial(m: Monomial, names: Mapping[Cell, str] | None) -> str:
    if names and all(v in names for v, _ in m.items):
        if not m.items:
            return "1"
        parts = sorted((names[v], e) for v, e in m.items)
        return "".join(n if e == 1 else f"{n}^{e}" for n, e in parts)
    return str(m)


def format_binomial(b: Binomial, names: Mapping[Cell, str] | None = None) -> str:
    lead = _format_monomial(b.lead, names)
    if b.tail is None:
        return lead
    return f"{lead}-{_format_monomial(b.tail, names)}"
