"""Independent reference implementations used only by the tests.

Nothing here calls the package's algorithms: admissible sets come from
trying every subset, Gröbner bases come from sympy, fibers from listing every
table with the right margins.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy


def box_vertices(anchor):
    i, j = anchor
    return [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]


def box_edges(anchor):
    a, b, c, d = box_vertices(anchor)
    return [{a, b}, {c, d}, {a, c}, {b, d}]


def vertex_set(anchors):
    return sorted({v for a in anchors for v in box_vertices(a)})


def brute_admissible(anchors) -> set[frozenset]:
    """Every subset W of V(C) such that each box meets W in nothing or in a
    set containing one of the box's four edges."""
    cells = vertex_set(anchors)
    out = set()
    for mask in range(1 << len(cells)):
        W = {c for k, c in enumerate(cells) if mask >> k & 1}
        ok = True
        for a in anchors:
            meet = W & set(box_vertices(a))
            if meet and not any(e <= meet for e in box_edges(a)):
                ok = False
                break
        if ok:
            out.add(frozenset(W))
    return out


def brute_inner(region) -> set[tuple[int, int, int, int]]:
    """All (r1, r2, c1, c2) with r1<r2, c1<c2 whose rectangle is inside region."""
    region = set(region)
    if not region:
        return set()
    rmax = max(r for r, _ in region)
    cmax = max(c for _, c in region)
    out = set()
    for r1 in range(1, rmax + 1):
        for r2 in range(r1 + 1, rmax + 1):
            for c1 in range(1, cmax + 1):
                for c2 in range(c1 + 1, cmax + 1):
                    rect = {(r, c) for r in range(r1, r2 + 1) for c in range(c1, c2 + 1)}
                    if rect <= region:
                        out.add((r1, r2, c1, c2))
    return out


# -- sympy -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def sym(cell) -> sympy.Symbol:
    if isinstance(cell, str):
        return sympy.Symbol(cell)
    return sympy.Symbol(f"x_{cell[0]}_{cell[1]}")


def monomial_expr(exponents: dict):
    out = sympy.Integer(1)
    for v, e in exponents.items():
        out *= sym(v) ** e
    return out


def binomial_expr(b):
    """Package Binomial -> sympy expression lead - tail."""
    lead = monomial_expr(b.lead.as_dict())
    if b.tail is None:
        return lead
    return lead - monomial_expr(b.tail.as_dict())


def minor_expr(anchor):
    a, b, c, d = (sym(v) for v in box_vertices(anchor))
    return a * d - b * c


def sympy_reduced_basis(exprs, order_cells):
    """Reduced lex basis with the first cell largest; returned as a set of
    expressions normalised to a positive leading coefficient."""
    gens = [sym(c) for c in order_cells]
    G = sympy.groebner(list(exprs), *gens, order="lex")
    return {sympy.Poly(g, *gens).monic().as_expr() for g in G.exprs}


def normalised(exprs, order_cells):
    gens = [sym(c) for c in order_cells]
    return {sympy.Poly(e, *gens).monic().as_expr() for e in exprs}


# -- tables ------------------------------------------------------------------------


def tables_with_total(cells, total):
    """Every non-negative integer table on ``cells`` with the given sum."""
    cells = list(cells)
    n = len(cells)
    for bars in itertools.combinations(range(total + n - 1), n - 1):
        prev = -1
        values = []
        for b in bars + (total + n - 1,):
            values.append(b - prev - 1)
            prev = b
        yield {c: v for c, v in zip(cells, values) if v}


def row_col_sums(table, cells):
    rows, cols = {}, {}
    for (r, c) in cells:
        rows.setdefault(r, 0)
        cols.setdefault(c, 0)
    for (r, c), v in table.items():
        rows[r] += v
        cols[c] += v
    return tuple(sorted(rows.items())), tuple(sorted(cols.items()))


def vanishes(point, W, minors) -> bool:
    """Whether a numeric point is a zero of the variables W and the given minors."""
    if any(point[w] for w in W):
        return False
    return all(point[p] * point[q] == point[r] * point[s] for m in minors for (p, q), (r, s) in [(m.diagonal, m.antidiagonal)])


def generic_point(vertices, W, inner, rng):
    """A random zero of (W, inner) on the given vertices.

    Cells covered by an inner rectangle get rank-one values u_row * v_col, which
    kill every minor of a region built from overlapping rectangles; the rest
    get large independent values."""
    u = {r: rng.randint(2, 997) for r in range(1, 40)}
    v = {c: rng.randint(2, 997) for c in range(1, 40)}
    covered = {(i, j) for m in inner for i in range(m.row_lo, m.row_hi + 1) for j in range(m.col_lo, m.col_hi + 1)}
    point = {}
    for x in vertices:
        if x in W:
            point[x] = 0
        elif (x.row, x.col) in covered:
            point[x] = u[x.row] * v[x.col]
        else:
            point[x] = rng.randint(10**6, 10**9)
    assert vanishes(point, W, inner)
    return point


def fiber_classes(anchors, total):
    """Connected classes of the move graph on all tables of a given total.

    Tables are value tuples over vertex_set(anchors); a move adds +1 on a
    box's diagonal and -1 on its anti-diagonal (or the reverse).  Returns
    (cells, {table: class representative})."""
    cells = vertex_set(anchors)
    index = {c: k for k, c in enumerate(cells)}
    deltas = []
    for a in anchors:
        tl, tr, bl, br = (index[v] for v in box_vertices(a))
        for s in (1, -1):
            d = [0] * len(cells)
            d[tl] = d[br] = s
            d[tr] = d[bl] = -s
            deltas.append(d)
    tables = []
    for t in tables_with_total(cells, total):
        tables.append(tuple(t.get(c, 0) for c in cells))
    parent = {t: t for t in tables}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for t in tables:
        for d in deltas:
            u = tuple(x + y for x, y in zip(t, d))
            if min(u) >= 0:
                parent[find(u)] = find(t)
    return cells, {t: find(t) for t in tables}
