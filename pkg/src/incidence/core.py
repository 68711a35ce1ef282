"""Board and position model for partisan scoring positional games.

A board is a hypergraph whose hyperedges carry one of three colours. Left
scores the blue and green hyperedges she fully claims, Right the red and
green ones; the score of a finished game is Left's count minus Right's.
All-blue boards are Maker-Breaker games, all-green boards Maker-Maker games.

Every object here is immutable; ``claim`` and friends return new positions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple


class BoardError(ValueError):
    """Invalid hypergraph or position."""


class IllegalMoveError(ValueError):
    """Claiming a vertex that is not free."""


class NotTerminalError(ValueError):
    """Terminal scoring requested while vertices are still free."""


class Color(enum.Enum):
    BLUE = "B"
    RED = "R"
    GREEN = "G"

    def swapped(self) -> "Color":
        if self is Color.BLUE:
            return Color.RED
        if self is Color.RED:
            return Color.BLUE
        return self


class Player(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT


class Convention(enum.Enum):
    MAKER_BREAKER = "maker-breaker"
    MAKER_MAKER = "maker-maker"
    PARTISAN = "partisan"


EdgeColor = Color
VertexId = int


class Edge(NamedTuple):
    vertices: tuple[int, ...]  # sorted, no repeats
    color: Color


def _as_color(c) -> Color:
    if isinstance(c, Color):
        return c
    try:
        return Color(str(c).upper()[:1])
    except ValueError:
        raise BoardError(f"unknown edge colour {c!r}") from None


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[Edge, ...] = ()
    multi: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise BoardError("vertex count must be nonnegative")
        seen = set()
        for e in self.edges:
            if not e.vertices:
                raise BoardError("empty hyperedge")
            for v in e.vertices:
                if not 0 <= v < self.n:
                    raise BoardError(f"vertex {v} out of range for n={self.n}")
            if len(set(e.vertices)) != len(e.vertices):
                raise BoardError(f"repeated vertex in hyperedge {e.vertices}")
            if not self.multi:
                if e in seen:
                    raise BoardError(f"duplicate hyperedge {e.vertices} ({e.color.value})")
                seen.add(e)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e.vertices:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def pair_multiplicity(self) -> int:
        """Largest number of hyperedges sharing one pair of distinct vertices."""
        counts: dict[tuple[int, int], int] = {}
        for e in self.edges:
            for pair in combinations(e.vertices, 2):
                counts[pair] = counts.get(pair, 0) + 1
        return max(counts.values(), default=0)

    @cached_property
    def colors(self) -> frozenset[Color]:
        return frozenset(e.color for e in self.edges)

    @property
    def convention(self) -> Convention:
        # an edgeless board is scored the same way under every convention
        if self.colors <= {Color.BLUE}:
            return Convention.MAKER_BREAKER
        if self.colors == {Color.GREEN}:
            return Convention.MAKER_MAKER
        return Convention.PARTISAN

    @property
    def is_two_uniform(self) -> bool:
        return all(len(e.vertices) == 2 for e in self.edges)

    @property
    def is_incidence_mb(self) -> bool:
        """All-blue and 2-uniform: Maker-Breaker Incidence."""
        return self.colors <= {Color.BLUE} and self.is_two_uniform

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e.vertices:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            for u in e.vertices:
                nb[u].update(e.vertices)
        for v in range(self.n):
            nb[v].discard(v)
        return tuple(frozenset(s) for s in nb)


def build_hypergraph(n: int, edges: Iterable, multi: bool = False) -> Hypergraph:
    """Validate and build a board from ``(vertex-iterable, colour)`` pairs.

    Colours may be :class:`Color` members or their letters ``B``/``R``/``G``.
    """
    built = []
    for item in edges:
        verts, color = item
        vs = tuple(verts)
        if len(set(vs)) != len(vs):
            raise BoardError(f"repeated vertex in hyperedge {vs}")
        built.append(Edge(tuple(sorted(vs)), _as_color(color)))
    return Hypergraph(n, tuple(built), multi)


def graph(n: int, pairs: Iterable[tuple[int, int]], color=Color.BLUE) -> Hypergraph:
    return build_hypergraph(n, ((p, color) for p in pairs))


@dataclass(frozen=True)
class Position:
    board: Hypergraph
    left: frozenset[int] = frozenset()
    right: frozenset[int] = frozenset()
    # start offsets of the summands when built by disjoint_sum
    blocks: tuple[int, ...] = field(default=(0,), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        if self.left & self.right:
            raise BoardError(f"vertices claimed by both players: {sorted(self.left & self.right)}")
        for v in self.left | self.right:
            if not 0 <= v < self.board.n:
                raise BoardError(f"claimed vertex {v} out of range")

    @property
    def n(self) -> int:
        return self.board.n

    @cached_property
    def free(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.board.n) if v not in self.left and v not in self.right)

    @property
    def is_terminal(self) -> bool:
        return not self.free

    def claim(self, who: Player, v: int) -> "Position":
        if not 0 <= v < self.board.n:
            raise IllegalMoveError(f"vertex {v} out of range")
        if v in self.left or v in self.right:
            raise IllegalMoveError(f"vertex {v} already claimed")
        if who is Player.LEFT:
            return Position(self.board, self.left | {v}, self.right, self.blocks)
        return Position(self.board, self.left, self.right | {v}, self.blocks)

    def terminal_score(self) -> int:
        if self.free:
            raise NotTerminalError(f"{len(self.free)} vertices still free")
        return score_of(self.board, self.left, self.right)


def score_of(board: Hypergraph, left: frozenset[int], right: frozenset[int]) -> int:
    """Left's completed blue/green edges minus Right's completed red/green edges."""
    s = 0
    for e in board.edges:
        vs = e.vertices
        if e.color is not Color.RED and all(v in left for v in vs):
            s += 1
        elif e.color is not Color.BLUE and all(v in right for v in vs):
            s -= 1
    return s


def terminal_score(p: Position) -> int:
    return p.terminal_score()


def fresh(board: Hypergraph) -> Position:
    return Position(board)


def negate(p: Position) -> Position:
    board = Hypergraph(
        p.board.n,
        tuple(Edge(e.vertices, e.color.swapped()) for e in p.board.edges),
        p.board.multi,
    )
    return Position(board, p.right, p.left, p.blocks)


def disjoint_sum(*parts: Position) -> Position:
    """Board of the disjoint sum; summand ``i`` is shifted by the sizes before it."""
    n = 0
    edges: list[Edge] = []
    left: set[int] = set()
    right: set[int] = set()
    blocks: list[int] = []
    multi = False
    for p in parts:
        blocks.append(n)
        edges.extend(Edge(tuple(v + n for v in e.vertices), e.color) for e in p.board.edges)
        left.update(v + n for v in p.left)
        right.update(v + n for v in p.right)
        multi = multi or p.board.multi
        n += p.board.n
    return Position(Hypergraph(n, tuple(edges), multi), frozenset(left), frozenset(right), tuple(blocks) or (0,))


def constant(k: int) -> Position:
    """The optionless game worth ``k``: |k| finished edges owned by one side."""
    if k == 0:
        return Position(Hypergraph(0))
    color = Color.BLUE if k > 0 else Color.RED
    m = abs(k)
    board = build_hypergraph(2 * m, (((2 * i, 2 * i + 1), color) for i in range(m)))
    owned = frozenset(range(2 * m))
    return Position(board, owned, frozenset()) if k > 0 else Position(board, frozenset(), owned)


EMPTY = Position(Hypergraph(0))
