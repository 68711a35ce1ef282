"""Closed forms and bounds for the families with known scores.

Everything here is cheap; the solver is only used to derive the small
residual table for unions of paths and the few base sums behind cycles.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .core import BoardError, Color, Hypergraph, NotTerminalError, Position, disjoint_sum
from .generators import path
from .solver import Engine, ScorePair, score_pair

PotentialValue = Fraction

RESIDUAL_TABLE_FILE = "residual_table.txt"
RESIDUAL_TABLE_SHA256 = "52955d5e32eb661df2ad2f2cc4e2510fb6c3e831f5110f68c18836028a1f75f4"

# claimed-endpoint paths of orders 2..6; longer ones repeat with +1 every 5
_CLAIMED_BASE = {2: (1, 0), 3: (1, 0), 4: (1, 0), 5: (1, 1), 6: (2, 1)}


@dataclass(frozen=True)
class PathResidual:
    offset: int
    p3_count: int
    p5_count: int

    def __post_init__(self):
        if self.p3_count not in (0, 1) or self.p5_count not in (0, 1, 2, 3):
            raise ValueError(f"residual out of range: {self.p3_count} P3 + {self.p5_count} P5")


def _require(cond: bool, msg: str):
    if not cond:
        raise BoardError(msg)


# Maker-Maker ----------------------------------------------------------------

def mm_score(g: Hypergraph) -> int:
    """Ls of an all-green graph: half the alternating sum of decreasing degrees.

    Degrees are bucketed rather than sorted, so this is linear in n + m.
    """
    _require(g.is_two_uniform, "degree formula needs a 2-uniform board")
    _require(not g.multi or g.pair_multiplicity <= 1, "degree formula needs a simple graph")
    counts = [0] * (g.n + 1)
    for d in g.degrees:
        counts[d] += 1
    total = 0
    sign = 1
    for d in range(g.n, -1, -1):
        c = counts[d]
        if c:
            # c copies of d, alternating from the current sign
            total += sign * d * (c % 2)
            if c % 2:
                sign = -sign
    return total // 2


def mm_optimal_move(p: Position) -> int:
    """A free vertex of maximum degree, smallest index on ties."""
    _require(p.board.is_two_uniform, "greedy move needs a 2-uniform board")
    if not p.free:
        raise NotTerminalError("no free vertex")
    deg = p.board.degrees
    return min(p.free, key=lambda v: (-deg[v], v))


def mm_delta_bounds(h: Hypergraph) -> tuple[int, int]:
    """Window ``(0, upper)`` for Ls of an all-green board."""
    delta = h.max_degree
    if h.is_two_uniform:
        return 0, delta // 2
    return 0, delta


# potential ------------------------------------------------------------------

def _live(p: Position):
    for e in p.board.edges:
        if not any(v in p.right for v in e.vertices):
            yield e, sum(1 for v in e.vertices if v not in p.left)


def _require_blue(p_or_h):
    board = p_or_h.board if isinstance(p_or_h, Position) else p_or_h
    _require(board.colors <= {Color.BLUE}, "potential needs an all-blue board")


def potential(p: Position) -> Fraction:
    """Sum over hyperedges free of Right of 2^-(unclaimed vertices)."""
    _require_blue(p)
    return sum((Fraction(1, 2 ** k) for _, k in _live(p)), Fraction(0))


def potential_delta(p: Position, v: int) -> Fraction:
    """Change in potential magnitude caused by claiming ``v``."""
    _require_blue(p)
    return sum((Fraction(1, 2 ** k) for e, k in _live(p) if v in e.vertices), Fraction(0))


def potential_greedy_move(p: Position) -> int:
    _require_blue(p)
    if not p.free:
        raise NotTerminalError("no free vertex")
    return max(p.free, key=lambda v: (potential_delta(p, v), -v))


def es_bounds(h: Hypergraph) -> tuple[Fraction, Fraction]:
    """``(lower bound on Ls, upper bound on Rs)`` for an all-blue board."""
    _require_blue(h)
    total = sum((Fraction(1, 2 ** len(e.vertices)) for e in h.edges), Fraction(0))
    ell = max(1, h.pair_multiplicity)
    return total - Fraction(h.n * ell, 8), total


# paths, cycles, trees -------------------------------------------------------

def mb_path_score(n: int) -> ScorePair:
    """(Ls, Rs) of the blue path on ``n`` vertices."""
    _require(n >= 1, "path needs at least one vertex")
    q, r = divmod(n, 5)
    return ScorePair(q if r <= 2 else q + 1, q - 1 if r == 0 else q)


def mb_claimed_path_score(n: int) -> ScorePair:
    """(Ls, Rs) of the blue path on ``n`` vertices with one end already Left's."""
    _require(n >= 1, "path needs at least one vertex")
    if n == 1:
        return ScorePair(0, 0)
    q, r = divmod(n - 2, 5)
    ls, rs = _CLAIMED_BASE[r + 2]
    return ScorePair(q + ls, q + rs)


def _read_table() -> str:
    return resources.files("incidence").joinpath("data", RESIDUAL_TABLE_FILE).read_text()


def table_digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@lru_cache(maxsize=1)
def residual_table() -> dict[tuple[int, int], ScorePair]:
    text = _read_table()
    if table_digest(text) != RESIDUAL_TABLE_SHA256:
        raise RuntimeError(f"{RESIDUAL_TABLE_FILE} does not match its recorded checksum")
    table = {}
    for line in text.splitlines():
        a, b, ls, rs = map(int, line.split())
        table[(a, b)] = ScorePair(ls, rs)
    return table


def derive_residual_table(cache: Engine | None = None) -> str:
    """Solve ``a P3 + b P5`` for a in 0..1, b in 0..3 and format the table."""
    cache = cache or Engine()
    lines = []
    for a in (0, 1):
        for b in range(4):
            parts = [Position(path(3))] * a + [Position(path(5))] * b
            ls, rs = score_pair(disjoint_sum(*parts), cache=cache)
            lines.append(f"{a} {b} {ls} {rs}")
    return "\n".join(lines) + "\n"


def path_residual(lengths) -> PathResidual:
    """Offset and leftover small paths of a union of blue paths."""
    offset = 0
    n34 = n5 = 0
    for n in lengths:
        _require(n >= 1, "path lengths must be positive")
        q = (n - 1) // 5
        r = n - 5 * q  # 1..5
        offset += q
        if r in (3, 4):
            n34 += 1
        elif r == 5:
            n5 += 1
    offset += n34 // 2 + 3 * (n5 // 4)
    return PathResidual(offset, n34 % 2, n5 % 4)


def mb_union_paths_score(lengths) -> ScorePair:
    res = path_residual(lengths)
    ls, rs = residual_table()[(res.p3_count, res.p5_count)]
    return ScorePair(res.offset + ls, res.offset + rs)


def claimed_path(n: int) -> Position:
    """Blue path on ``n`` vertices with vertex 0 claimed by Left."""
    return Position(path(n), frozenset({0}))


def _claimed_rep(k: int) -> tuple[int, int]:
    """``(offset, order)`` with the claimed path of order ``k`` equivalent to order plus offset."""
    if k <= 6:
        return 0, k
    q = (k - 2) // 5
    return q, k - 5 * q


@lru_cache(maxsize=None)
def _claimed_pair_ls(a: int, b: int) -> int:
    return score_pair(disjoint_sum(claimed_path(a), claimed_path(b)), cache=_cycle_engine()).ls


@lru_cache(maxsize=1)
def _cycle_engine() -> Engine:
    return Engine()


def mb_cycle_score(n: int) -> ScorePair:
    """(Ls, Rs) of the blue cycle on ``n`` vertices.

    After Left's first move and Right's reply the cycle falls into two
    paths hanging off Left's vertex; Right picks the split.
    """
    _require(n >= 3, "cycle needs at least 3 vertices")
    rs = mb_path_score(n - 1).ls
    best = None
    for k in range(1, n):
        oa, a = _claimed_rep(k)
        ob, b = _claimed_rep(n - k)
        a, b = min(a, b), max(a, b)
        val = oa + ob + _claimed_pair_ls(a, b)
        if best is None or val < best:
            best = val
    return ScorePair(best, rs)


def binary_tree_score(k: int) -> ScorePair:
    """(Ls, Rs) of the complete binary tree of depth ``k``."""
    _require(k >= 0, "depth must be nonnegative")
    if k == 0:
        return ScorePair(0, 0)
    return ScorePair(2 ** (k - 1), 2 ** (k - 1) - 1)
