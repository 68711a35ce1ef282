"""Named board families.

Numbering conventions: paths and cycles are numbered along the path,
complete binary trees breadth-first (children of ``i`` are ``2i+1, 2i+2``),
stars have their centre at 0.
"""
from __future__ import annotations

from itertools import combinations

from .core import BoardError, Color, Hypergraph, Position, build_hypergraph, disjoint_sum, graph

# Two stars: u=0 with four pendant leaves and a neighbour 1 carrying two
# more leaves; v=2 with four pendant leaves and one pendant neighbour 3.
FORK_U = 0
FORK_V = 2

# A seven-vertex endgame and its claims.
ENDGAME_EDGES = ((0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 5), (4, 5), (4, 6), (5, 6))
ENDGAME_LEFT = frozenset({1, 4, 5, 6})
ENDGAME_RIGHT = frozenset({0, 2, 3})

# Worked kernel example: five type classes (size, induces a clique?)
# and the class pairs joined completely.
TYPED_CLASSES = ((5, True), (5, False), (4, True), (5, False), (3, True))
TYPED_CLASS_EDGES = ((0, 1), (0, 2), (0, 3), (1, 4))


def _need(cond: bool, msg: str):
    if not cond:
        raise BoardError(msg)


def path(n: int, color=Color.BLUE) -> Hypergraph:
    _need(n >= 0, "path length must be nonnegative")
    return graph(n, ((i, i + 1) for i in range(n - 1)), color)


def cycle(n: int, color=Color.BLUE) -> Hypergraph:
    _need(n >= 3, "cycle needs at least 3 vertices")
    return graph(n, ((i, (i + 1) % n) for i in range(n)), color)


def complete(n: int, color=Color.BLUE) -> Hypergraph:
    _need(n >= 0, "order must be nonnegative")
    return graph(n, combinations(range(n), 2), color)


def star(leaves: int, color=Color.BLUE) -> Hypergraph:
    _need(leaves >= 0, "leaf count must be nonnegative")
    return graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)), color)


def binary_tree(depth: int, color=Color.BLUE) -> Hypergraph:
    _need(depth >= 0, "depth must be nonnegative")
    n = 2 ** (depth + 1) - 1
    return graph(n, ((i, c) for i in range(n) for c in (2 * i + 1, 2 * i + 2) if c < n), color)


def fig1(color=Color.GREEN) -> Hypergraph:
    return graph(7, ENDGAME_EDGES, color)


def fig1_position(color=Color.GREEN) -> Position:
    return Position(fig1(color), ENDGAME_LEFT, ENDGAME_RIGHT)


def fig2() -> Hypergraph:
    edges = [(0, 4), (0, 5), (0, 6), (0, 7), (0, 1), (1, 8), (1, 9),
             (2, 10), (2, 11), (2, 12), (2, 13), (2, 3)]
    return graph(14, edges)


def fig3_star(delta: int, color=Color.GREEN) -> Hypergraph:
    """Centre 0 in a singleton hyperedge and in ``delta-1`` pairs."""
    _need(delta >= 1, "maximum degree must be at least 1")
    edges = [((0,), color)] + [((0, i), color) for i in range(1, delta)]
    return build_hypergraph(delta, edges)


def fig5() -> Hypergraph:
    starts = []
    n = 0
    for size, _ in TYPED_CLASSES:
        starts.append(n)
        n += size
    members = [range(s, s + size) for s, (size, _) in zip(starts, TYPED_CLASSES)]
    edges = []
    for cls, (_, clique) in zip(members, TYPED_CLASSES):
        if clique:
            edges.extend(combinations(cls, 2))
    for a, b in TYPED_CLASS_EDGES:
        edges.extend((u, v) for u in members[a] for v in members[b])
    return graph(n, edges)


def union_paths(lengths, color=Color.BLUE) -> Hypergraph:
    for n in lengths:
        _need(n >= 1, "path lengths must be positive")
    return disjoint_sum(*(Position(path(n, color)) for n in lengths)).board


FAMILIES = {
    "path-l": lambda n: path(n, Color.BLUE),
    "path-r": lambda n: path(n, Color.RED),
    "path-g": lambda n: path(n, Color.GREEN),
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "binary-tree": binary_tree,
    "fig1": fig1,
    "fig2": fig2,
    "fig3-star": fig3_star,
    "fig5": fig5,
    "union-paths": lambda *ls: union_paths(ls),
}


def generate(kind: str, *params, color=None) -> Hypergraph:
    """Build a named family, e.g. ``generate("path-l", 5)``."""
    key = kind.lower().replace("_", "-")
    aliases = {"pathl": "path-l", "pathr": "path-r", "binarytree": "binary-tree",
               "fig3star": "fig3-star", "unionpaths": "union-paths"}
    key = aliases.get(key.replace("-", ""), key)
    if key not in FAMILIES:
        raise BoardError(f"unknown family {kind!r}; known: {', '.join(sorted(FAMILIES))}")
    if color is not None and key in ("cycle", "complete", "star", "binary-tree", "fig1", "fig3-star"):
        return FAMILIES[key](*params, color=color)
    try:
        return FAMILIES[key](*params)
    except TypeError as exc:
        raise BoardError(f"bad parameters for {key}: {exc}") from None
