"""Exact minimax solver.

The default engine works on *residual* positions: claimed vertices are
folded away (an edge that can no longer score for anyone is dropped, a
finished edge moves into an integer offset, a partly claimed edge shrinks to
its free vertices and takes the colour of the only player who can still
complete it). The free part splits into connected components, each replaced
by a canonical key, so a position is an offset plus a sorted multiset of
component ids. Isomorphic components, reordered sums and equivalent moves
all collapse onto the same memo entry.

Search options:

``symmetry``
    moves whose resulting residual positions coincide are searched once.
``domination``
    on Maker-Breaker graph residuals, skip a move ``u`` when some kept move
    ``v`` satisfies ``p(v) >= p(u) + |N(u) minus N[v]|`` (``p`` counts
    Left-claimed neighbours).
``twin_reduction``
    hand equivalent free pairs to opposite players before searching (all-blue
    2-uniform boards only).
``alphabeta``
    bounded search seeded with the disjoint-sum inequalities.

The ``bitmask`` engine is an independent exhaustive search over claim masks
(compiled when available) and serves as the reference oracle.
"""
from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from . import kernel
from ._canon import canonical, components
from .core import BoardError, Color, Player, Position, disjoint_sum, negate

BLUE, RED, GREEN = 0, 1, 2
_INF = 1 << 30

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


CanonicalKey = bytes


class SearchBudgetExceeded(RuntimeError):
    """The configured node or size budget ran out before an answer was found."""


class ScorePair(NamedTuple):
    ls: int
    rs: int


@dataclass(frozen=True)
class SolveOptions:
    engine: str = "canonical"  # or "bitmask"
    symmetry: bool = True
    domination: bool = True
    twin_reduction: bool = False
    alphabeta: bool = False
    workers: int = 1
    max_nodes: int | None = None
    max_entries: int = 4_000_000


@dataclass(frozen=True)
class SolveResult:
    value: int
    optimal_moves: tuple[int, ...]
    nodes_expanded: int
    memo_hits: int
    child_values: dict = field(default_factory=dict, compare=False, repr=False)


# residual positions ---------------------------------------------------------

def residual(p: Position) -> tuple[int, list[int], list[tuple[int, tuple[int, ...]]]]:
    """``(offset, free vertices, residual edges)`` of a position."""
    left, right = p.left, p.right
    offset = 0
    out = []
    for e in p.board.edges:
        vs = e.vertices
        has_l = any(v in left for v in vs)
        has_r = any(v in right for v in vs)
        rest = tuple(v for v in vs if v not in left and v not in right)
        c = e.color
        if c is Color.BLUE:
            if has_r:
                continue
            if not rest:
                offset += 1
            else:
                out.append((BLUE, rest))
        elif c is Color.RED:
            if has_l:
                continue
            if not rest:
                offset -= 1
            else:
                out.append((RED, rest))
        else:
            if has_l and has_r:
                continue
            if not rest:
                offset += 1 if has_l else -1
            else:
                out.append((BLUE if has_l else RED if has_r else GREEN, rest))
    return offset, list(p.free), out


def _simple_info(k: int, edges) -> tuple | None:
    """``(p, neighbour sets)`` when the component is a blue simple graph with weights."""
    p = [0] * k
    nb: list[set[int]] = [set() for _ in range(k)]
    for c, vs in edges:
        if c != BLUE or len(vs) > 2:
            return None
        if len(vs) == 1:
            p[vs[0]] += 1
        else:
            a, b = vs
            if b in nb[a]:
                return None
            nb[a].add(b)
            nb[b].add(a)
    return tuple(p), tuple(frozenset(s) for s in nb)


class _Move(NamedTuple):
    delta: int
    child: tuple[int, ...]
    slot: int  # component position in the parent state
    vertex: int  # local vertex in that component


class Engine:
    """Memoised search over canonical residual states.

    An engine may be reused across calls to share its tables; values never
    depend on what was cached before, only the node and hit counters do.
    """

    def __init__(self, options: SolveOptions | None = None):
        self.options = options or SolveOptions()
        self._ids: dict = {}
        self._keys: list = []
        self._info: list = []
        self._outcomes: dict = {}
        self._memo: dict = {}
        self._bounds: dict = {}
        self.nodes = 0
        self.hits = 0

    # components
    def intern(self, key) -> int:
        cid = self._ids.get(key)
        if cid is None:
            cid = len(self._keys)
            self._ids[key] = cid
            self._keys.append(key)
            self._info.append(_simple_info(*key))
        return cid

    def state_of(self, free, edges) -> tuple[int, ...]:
        ids = [self.intern(canonical(len(m), le)) for m, le in components(free, edges)]
        return tuple(sorted(ids))

    def position_state(self, p: Position) -> tuple[int, tuple[int, ...]]:
        offset, free, edges = residual(p)
        return offset, self.state_of(free, edges)

    def key_of(self, cid: int):
        return self._keys[cid]

    def outcomes(self, cid: int, left: bool) -> list[tuple[int, tuple[int, ...], int]]:
        """``(delta, new component ids, local vertex)`` for each move in a component."""
        got = self._outcomes.get((cid, left))
        if got is not None:
            return got
        k, edges = self._keys[cid]
        out = []
        seen = set()
        for v in range(k):
            delta = 0
            new = []
            for c, vs in edges:
                if v not in vs:
                    new.append((c, vs))
                    continue
                if c == (RED if left else BLUE):
                    continue
                rest = tuple(u for u in vs if u != v)
                if not rest:
                    delta += 1 if left else -1
                else:
                    new.append((BLUE if left else RED, rest))
            others = [u for u in range(k) if u != v]
            ids = self.state_of(others, new) if others else ()
            if self.options.symmetry:
                if (delta, ids) in seen:
                    continue
                seen.add((delta, ids))
            out.append((delta, ids, v))
        self._outcomes[(cid, left)] = out
        return out

    def _candidates(self, cid: int, left: bool) -> list[tuple]:
        """Moves in one weighted-graph component that survive the local domination test.

        Records are ``(p, degree, delta, ids, vertex)`` by decreasing ``p``.
        """
        key = (cid, left, "dom")
        got = self._outcomes.get(key)
        if got is not None:
            return got
        p, nb = self._info[cid]
        order = sorted(self.outcomes(cid, left), key=lambda o: (-p[o[2]], o[2]))
        kept: list[tuple] = []
        for delta, ids, u in order:
            nu = nb[u]
            if not any(pv >= p[u] + len(nu - nb[v] - {v}) for pv, _, _, _, v in kept):
                kept.append((p[u], len(nu), delta, ids, u))
        self._outcomes[key] = kept
        return kept

    def _moves(self, state: tuple[int, ...], left: bool) -> list[_Move]:
        sym = self.options.symmetry
        slots = [i for i, cid in enumerate(state) if not (sym and i and state[i - 1] == cid)]
        if self.options.domination and all(self._info[c] is not None for c in state):
            raw = []
            for i in slots:
                for pu, deg, delta, ids, v in self._candidates(state[i], left):
                    raw.append((pu, deg, i, delta, ids, v))
            if len(slots) > 1:
                # another component's vertex dominates u when p(v) >= p(u) + deg(u)
                raw.sort(key=lambda r: (-r[0], r[2]))
                best: dict[int, int] = {}
                kept = []
                for r in raw:
                    pu, deg, i = r[0], r[1], r[2]
                    if any(pv >= pu + deg for j, pv in best.items() if j != i):
                        continue
                    best.setdefault(i, pu)
                    kept.append(r)
                raw = kept
            flat = [(i, delta, ids, v) for _, _, i, delta, ids, v in raw]
        else:
            flat = [(i, delta, ids, v) for i in slots for delta, ids, v in self.outcomes(state[i], left)]
        moves = []
        seen = set()
        for i, delta, ids, v in flat:
            rest = state[:i] + state[i + 1:]
            child = tuple(sorted(rest + ids)) if ids else rest
            if sym:
                if (delta, child) in seen:
                    continue
                seen.add((delta, child))
            moves.append(_Move(delta, child, i, v))
        return moves

    def _tick(self):
        self.nodes += 1
        limit = self.options.max_nodes
        if limit is not None and self.nodes > limit:
            raise SearchBudgetExceeded(f"node budget of {limit} exceeded")

    def _store(self, table: dict, key, val):
        if len(table) >= self.options.max_entries:
            drop = max(1, len(table) // 4)
            for old in list(table)[:drop]:
                del table[old]
        table[key] = val

    # exact values
    def value(self, state: tuple[int, ...], left: bool) -> int:
        if not state:
            return 0
        if self.options.alphabeta:
            return self.bounded(state, left, -_INF, _INF)
        key = (state, left)
        got = self._memo.get(key)
        if got is not None:
            self.hits += 1
            return got
        self._tick()
        best = -_INF if left else _INF
        for m in self._moves(state, left):
            val = m.delta + self.value(m.child, not left)
            if left:
                if val > best:
                    best = val
            elif val < best:
                best = val
        self._store(self._memo, key, best)
        return best

    # alpha-beta with a (lo, hi) table
    def _seed(self, state, left) -> tuple[int, int]:
        if len(state) < 2:
            return -_INF, _INF
        ls = [self.bounded((c,), True, -_INF, _INF) for c in state]
        rs = [self.bounded((c,), False, -_INF, _INF) for c in state]
        sl, sr = sum(ls), sum(rs)
        if left:
            return max(ls[i] + sr - rs[i] for i in range(len(state))), sl
        return sr, min(rs[i] + sl - ls[i] for i in range(len(state)))

    def bounded(self, state, left: bool, alpha: int, beta: int) -> int:
        if not state:
            return 0
        key = (state, left)
        exact = self._memo.get(key)
        if exact is not None:
            self.hits += 1
            return exact
        lo, hi = self._bounds.get(key) or self._seed(state, left)
        if lo == hi:
            self._store(self._memo, key, lo)
            return lo
        if lo >= beta:
            self.hits += 1
            return lo
        if hi <= alpha:
            self.hits += 1
            return hi
        a, b = max(alpha, lo), min(beta, hi)
        self._tick()
        if left:
            best = -_INF
            for m in self._moves(state, left):
                val = m.delta + self.bounded(m.child, False, a - m.delta, b - m.delta)
                if val > best:
                    best = val
                    if best > a:
                        a = best
                    if best >= b:
                        break
        else:
            best = _INF
            for m in self._moves(state, left):
                val = m.delta + self.bounded(m.child, True, a - m.delta, b - m.delta)
                if val < best:
                    best = val
                    if best < b:
                        b = best
                    if best <= a:
                        break
        # fail-soft: exact inside the searched window, a bound outside it
        a0, b0 = max(alpha, lo), min(beta, hi)
        if best <= a0:
            hi = min(hi, best)
        elif best >= b0:
            lo = max(lo, best)
        else:
            lo = hi = best
        if lo == hi:
            self._store(self._memo, key, lo)
        else:
            self._store(self._bounds, key, (lo, hi))
        return best


# twin reduction, domination -------------------------------------------------

def _require_mb_graph(p: Position, what: str):
    if not p.board.is_incidence_mb:
        raise BoardError(f"{what} needs an all-blue 2-uniform board")


def _equivalent(free_nb, lcount, a: int, b: int) -> bool:
    na = {k: c for k, c in free_nb[a].items() if k != b}
    nbb = {k: c for k, c in free_nb[b].items() if k != a}
    return na == nbb and lcount[a] == lcount[b]


def twin_reduce(p: Position) -> Position:
    """Give one vertex of each equivalent free pair to Left, the other to Right.

    Two free vertices are equivalent when their free neighbourhoods agree
    once each other is removed and they have as many Left-claimed
    neighbours. Repeats until no pair is left; the lower index goes to Left.
    """
    _require_mb_graph(p, "twin reduction")
    n = p.board.n
    adj: list[dict[int, int]] = [dict() for _ in range(n)]
    for e in p.board.edges:
        a, b = e.vertices
        adj[a][b] = adj[a].get(b, 0) + 1
        adj[b][a] = adj[b].get(a, 0) + 1
    left, right = set(p.left), set(p.right)
    free_nb = [{w: c for w, c in adj[v].items() if w not in left and w not in right} for v in range(n)]
    lcount = [sum(c for w, c in adj[v].items() if w in left) for v in range(n)]
    free = set(p.free)

    def take(v: int, to_left: bool):
        free.discard(v)
        (left if to_left else right).add(v)
        for w, c in adj[v].items():
            free_nb[w].pop(v, None)
            if to_left:
                lcount[w] += c

    while True:
        buckets: dict = {}
        for v in sorted(free):
            nb = free_nb[v]
            closed = dict(nb)
            closed[v] = closed.get(v, 0) + 1
            buckets.setdefault((0, tuple(sorted(nb.items())), lcount[v]), []).append(v)
            buckets.setdefault((1, tuple(sorted(closed.items())), lcount[v]), []).append(v)
        pairs = sorted((ms[i], ms[i + 1]) for ms in buckets.values() for i in range(0, len(ms) - 1, 2))
        changed = False
        for a, b in pairs:
            if a in free and b in free and _equivalent(free_nb, lcount, a, b):
                take(a, True)
                take(b, False)
                changed = True
        if not changed:
            return Position(p.board, frozenset(left), frozenset(right), p.blocks)


def dominates(p: Position, v: int, u: int) -> bool:
    """Sufficient test that claiming ``v`` is at least as good as ``u`` for both players.

    ``|N(v) & L| >= |N(u) & L| + |(N(u) - N[v]) & F|``.
    """
    _require_mb_graph(p, "domination test")
    free = set(p.free)
    for x in (u, v):
        if x not in free:
            raise BoardError(f"vertex {x} is not free")
    nb = p.board.neighbors
    lv = len(nb[v] & p.left)
    lu = len(nb[u] & p.left)
    extra = len((nb[u] - nb[v] - {v}) & free)
    return lv >= lu + extra


# top level ------------------------------------------------------------------

def _bitmask_solve(p: Position, left: bool, opts: SolveOptions) -> SolveResult:
    if p.board.n > 32:
        raise SearchBudgetExceeded("bitmask engine handles at most 32 vertices")
    masks, colors, lm, rm = kernel.encode(p)
    budget = -1 if opts.max_nodes is None else opts.max_nodes
    try:
        vals, nodes, hits = kernel.child_values(p.board.n, masks, colors, lm, rm, left, budget)
    except OverflowError as exc:
        raise SearchBudgetExceeded(str(exc)) from None
    return vals, nodes + 1, hits


def _child_task(args):
    child, left_next, opts = args
    eng = Engine(opts)
    offset, state = eng.position_state(child)
    val = offset + eng.value(state, left_next)
    return val, eng.nodes, eng.hits


def solve(p: Position, to_move: Player = Player.LEFT, options: SolveOptions | None = None,
          cache: Engine | None = None, **kw) -> SolveResult:
    """Value of ``p`` with ``to_move`` playing first, and every optimal first move."""
    opts = options or SolveOptions()
    if kw:
        opts = SolveOptions(**{**opts.__dict__, **kw})
    left = to_move is Player.LEFT
    if opts.twin_reduction:
        _require_mb_graph(p, "twin reduction")
    if not p.free:
        return SolveResult(p.terminal_score(), (), 0, 0)

    children = [(x, p.claim(to_move, x)) for x in p.free]
    if opts.twin_reduction:
        children = [(x, twin_reduce(c)) for x, c in children]

    if opts.engine == "bitmask":
        if opts.twin_reduction:
            vals = {}
            nodes = hits = 0
            for x, c in children:
                r = solve(c, to_move.other, SolveOptions(engine="bitmask", max_nodes=opts.max_nodes))
                vals[x] = r.value
                nodes += r.nodes_expanded
                hits += r.memo_hits
            nodes += 1
        else:
            vals, nodes, hits = _bitmask_solve(p, left, opts)
    elif opts.engine == "canonical":
        eng = cache or Engine(opts)
        start_nodes, start_hits = eng.nodes, eng.hits
        vals = {}
        if opts.workers > 1 and len(children) > 1:
            tasks = [(c, not left, opts) for _, c in children]
            with ProcessPoolExecutor(max_workers=opts.workers) as pool:
                got = list(pool.map(_child_task, tasks))
            nodes = 1 + sum(g[1] for g in got)
            hits = sum(g[2] for g in got)
            vals = {x: g[0] for (x, _), g in zip(children, got)}
        else:
            eng.nodes += 1
            for x, c in children:
                offset, state = eng.position_state(c)
                vals[x] = offset + eng.value(state, not left)
            nodes = eng.nodes - start_nodes
            hits = eng.hits - start_hits
    else:
        raise ValueError(f"unknown engine {opts.engine!r}")

    best = max(vals.values()) if left else min(vals.values())
    moves = tuple(sorted(x for x, v in vals.items() if v == best))
    return SolveResult(best, moves, nodes, hits, dict(vals))


def score_pair(p: Position, options: SolveOptions | None = None, cache: Engine | None = None,
               **kw) -> ScorePair:
    """``(Ls, Rs)`` of a position."""
    if not p.free:
        s = p.terminal_score()
        return ScorePair(s, s)
    opts = options or SolveOptions()
    if kw:
        opts = SolveOptions(**{**opts.__dict__, **kw})
    if opts.engine == "canonical" and opts.workers <= 1 and not opts.twin_reduction:
        # root value only, so skip the per-move bookkeeping
        eng = cache or Engine(opts)
        offset, state = eng.position_state(p)
        return ScorePair(offset + eng.value(state, True), offset + eng.value(state, False))
    return ScorePair(solve(p, Player.LEFT, opts, cache).value,
                     solve(p, Player.RIGHT, opts, cache).value)


def milnor_equivalent(g: Position, h: Position, max_free: int = 48,
                      options: SolveOptions | None = None, cache: Engine | None = None) -> bool:
    """True iff ``g - h`` scores 0 whoever starts."""
    diff = disjoint_sum(g, negate(h))
    if len(diff.free) > max_free:
        raise SearchBudgetExceeded(
            f"difference has {len(diff.free)} free vertices, budget is {max_free}")
    ls, rs = score_pair(diff, options, cache)
    return ls == 0 and rs == 0


def canonical_key(p: Position, to_move: Player) -> bytes:
    """Key equal for positions that differ by component order or relabelling."""
    offset, free, edges = residual(p)
    comps = sorted(canonical(len(m), le) for m, le in components(free, edges))
    tag = "L" if to_move is Player.LEFT else "R"
    return repr((tag, offset, tuple(comps))).encode()
