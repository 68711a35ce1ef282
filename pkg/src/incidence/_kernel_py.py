"""Pure-Python exhaustive minimax; same API and results as the compiled ``_kernel``."""
from __future__ import annotations

from itertools import combinations

BLUE, RED, GREEN = 0, 1, 2


class _Search:
    def __init__(self, n, masks, colors, budget=-1):
        if n > 32:
            raise ValueError("bitmask engine supports at most 32 vertices")
        self.n = n
        self.edges = list(zip(masks, colors))
        self.memo: dict[tuple[int, int], int] = {}
        self.nodes = 0
        self.hits = 0
        self.budget = budget
        self.full = (1 << n) - 1

    def score(self, L, R):
        s = 0
        for e, c in self.edges:
            if c != RED and e & L == e:
                s += 1
            elif c != BLUE and e & R == e:
                s -= 1
        return s

    def value(self, L, R, left):
        fr = self.full & ~(L | R)
        if not fr:
            return self.score(L, R)
        key = (L, R)
        got = self.memo.get(key)
        if got is not None:
            self.hits += 1
            return got
        self.nodes += 1
        if 0 <= self.budget < self.nodes:
            raise OverflowError("node budget exceeded")
        f = fr
        if left:
            best = -1_000_000
            while f:
                low = f & -f
                f ^= low
                val = self.value(L | low, R, False)
                if val > best:
                    best = val
        else:
            best = 1_000_000
            while f:
                low = f & -f
                f ^= low
                val = self.value(L, R | low, True)
                if val < best:
                    best = val
        self.memo[key] = best
        return best


def minimax(n, masks, colors, left_mask, right_mask, left_to_move, budget=-1):
    s = _Search(n, masks, colors, budget)
    val = s.value(left_mask, right_mask, bool(left_to_move))
    return val, s.nodes, s.hits


def child_values(n, masks, colors, left_mask, right_mask, left_to_move, budget=-1):
    s = _Search(n, masks, colors, budget)
    out = {}
    for v in range(n):
        bit = 1 << v
        if (left_mask | right_mask) & bit:
            continue
        if left_to_move:
            out[v] = s.value(left_mask | bit, right_mask, False)
        else:
            out[v] = s.value(left_mask, right_mask | bit, True)
    return out, s.nodes, s.hits


def probe_green(n, max_edges, limit=100):
    if n > 8:
        raise ValueError("probe limited to 8 vertices")
    subsets = range(1, 1 << n)
    count = 0
    violations = []
    best = None
    best_gap = -1_000_000
    for k in range(0, min(max_edges, len(subsets)) + 1):
        for masks in combinations(subsets, k):
            deg = [sum((e >> v) & 1 for e in masks) for v in range(n)]
            delta = max(deg, default=0)
            ls = _Search(n, masks, [GREEN] * k).value(0, 0, True)
            count += 1
            gap = 2 * ls - delta
            if gap > best_gap:
                best_gap = gap
                best = (list(masks), ls, delta)
            if 2 * ls > delta + 1 and len(violations) < limit:
                violations.append((list(masks), ls, delta))
    return count, violations, best
