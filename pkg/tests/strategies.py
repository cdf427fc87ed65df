"""Builders that turn arbitrary anchor sets into configurations of a given kind."""

from adjminors.grid import Cell, Configuration, component_graph, single_vertex_pairs


def make_special(anchors) -> Configuration:
    """Add boxes until every single-vertex meeting is mediated."""
    config = Configuration.of(anchors)
    while True:
        missing = [
            (p, q) for p, q in single_vertex_pairs(config)
            if Cell(p.row, q.col) not in config and Cell(q.row, p.col) not in config
        ]
        if not missing:
            return config
        p, q = missing[0]
        config = Configuration(config.anchors + (Cell(p.row, q.col),))


def make_chessboard(anchors) -> Configuration:
    """Greedy edge-free subset, then boxes dropped until no 4-cycle remains."""
    kept: list[Cell] = []
    for r, c in anchors:
        cell = Cell(r, c)
        if all(abs(cell.row - k.row) + abs(cell.col - k.col) > 1 for k in kept):
            kept.append(cell)
    config = Configuration.of(kept)
    while True:
        graph = component_graph(config)
        cycle = graph.four_cycle()
        if cycle is None:
            return config
        drop = graph.nodes[cycle[0]].anchors[0]
        config = Configuration(tuple(a for a in config.anchors if a != drop))
