# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled exhaustive minimax over (Left mask, Right mask) states.

Mirror of ``_kernel_py``; both modules expose the same three functions and
must return identical results.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

DEF BLUE = 0
DEF RED = 1
DEF GREEN = 2
DEF SENTINEL = -32768
DEF ARRAY_MAX_N = 15
DEF MAX_N = 32


cdef class _Search:
    cdef int n
    cdef int m
    cdef uint64_t* masks
    cdef int* colors
    cdef int64_t pow3[MAX_N]
    cdef short* table
    cdef unordered_map[uint64_t, int] memo
    cdef public long long nodes
    cdef public long long hits
    cdef long long budget

    def __cinit__(self, int n, masks, colors, long long budget=-1):
        cdef int i
        if n > MAX_N:
            raise ValueError("bitmask engine supports at most 32 vertices")
        self.n = n
        self.m = len(masks)
        self.masks = <uint64_t*> malloc(max(self.m, 1) * sizeof(uint64_t))
        self.colors = <int*> malloc(max(self.m, 1) * sizeof(int))
        for i in range(self.m):
            self.masks[i] = masks[i]
            self.colors[i] = colors[i]
        self.pow3[0] = 1
        for i in range(1, MAX_N):
            self.pow3[i] = self.pow3[i - 1] * 3
        self.table = NULL
        if n <= ARRAY_MAX_N:
            self.table = <short*> malloc(self.pow3[n] * sizeof(short))
            for i in range(self.pow3[n]):
                self.table[i] = SENTINEL
        self.nodes = 0
        self.hits = 0
        self.budget = budget

    def __dealloc__(self):
        free(self.masks)
        free(self.colors)
        if self.table != NULL:
            free(self.table)

    cdef int _score(self, uint64_t L, uint64_t R) nogil:
        cdef int s = 0
        cdef int i
        cdef uint64_t e
        for i in range(self.m):
            e = self.masks[i]
            if self.colors[i] != RED and (e & L) == e:
                s += 1
            elif self.colors[i] != BLUE and (e & R) == e:
                s -= 1
        return s

    cdef int _value(self, uint64_t L, uint64_t R, uint64_t fr, bint left, int64_t idx) except? -999999:
        cdef int best, val, v
        cdef uint64_t f, low, key
        if fr == 0:
            return self._score(L, R)
        if self.table != NULL:
            if self.table[idx] != SENTINEL:
                self.hits += 1
                return self.table[idx]
        else:
            key = L | (R << 32)
            if self.memo.count(key):
                self.hits += 1
                return self.memo[key]
        self.nodes += 1
        if self.budget >= 0 and self.nodes > self.budget:
            raise MemoryError("node budget exceeded")
        best = -1000000 if left else 1000000
        f = fr
        while f:
            low = f & (~f + 1)
            v = __builtin_ctzll(low)
            f ^= low
            if left:
                val = self._value(L | low, R, fr ^ low, False, idx + self.pow3[v])
                if val > best:
                    best = val
            else:
                val = self._value(L, R | low, fr ^ low, True, idx + 2 * self.pow3[v])
                if val < best:
                    best = val
        if self.table != NULL:
            self.table[idx] = best
        else:
            self.memo[L | (R << 32)] = best
        return best

    cdef int64_t _index(self, uint64_t L, uint64_t R):
        cdef int64_t idx = 0
        cdef int v
        for v in range(self.n):
            if (L >> v) & 1:
                idx += self.pow3[v]
            elif (R >> v) & 1:
                idx += 2 * self.pow3[v]
        return idx

    def value(self, uint64_t L, uint64_t R, bint left):
        cdef uint64_t full = (<uint64_t>1 << self.n) - 1 if self.n < 64 else <uint64_t>-1
        return self._value(L, R, full & ~(L | R), left, self._index(L, R))


def minimax(int n, masks, colors, uint64_t left_mask, uint64_t right_mask, bint left_to_move, long long budget=-1):
    """Return ``(value, nodes, hits)`` for the position and mover."""
    s = _Search(n, masks, colors, budget)
    try:
        val = s.value(left_mask, right_mask, left_to_move)
    except MemoryError:
        raise OverflowError("node budget exceeded")
    return val, s.nodes, s.hits


def child_values(int n, masks, colors, uint64_t left_mask, uint64_t right_mask, bint left_to_move, long long budget=-1):
    """Values after each legal move, as ``({vertex: value}, nodes, hits)``."""
    s = _Search(n, masks, colors, budget)
    out = {}
    cdef int v
    cdef uint64_t bit
    try:
        for v in range(n):
            bit = <uint64_t>1 << v
            if (left_mask | right_mask) & bit:
                continue
            if left_to_move:
                out[v] = s.value(left_mask | bit, right_mask, False)
            else:
                out[v] = s.value(left_mask, right_mask | bit, True)
    except MemoryError:
        raise OverflowError("node budget exceeded")
    return out, s.nodes, s.hits


cdef int _probe_ls(int n, uint64_t* masks, int m, short* table, int64_t* pow3,
                   uint64_t L, uint64_t R, uint64_t fr, bint left, int64_t idx) nogil:
    cdef int best, val, v, i, s
    cdef uint64_t f, low, e
    if fr == 0:
        s = 0
        for i in range(m):
            e = masks[i]
            if (e & L) == e:
                s += 1
            elif (e & R) == e:
                s -= 1
        return s
    if table[idx] != SENTINEL:
        return table[idx]
    best = -1000000 if left else 1000000
    f = fr
    while f:
        low = f & (~f + 1)
        v = __builtin_ctzll(low)
        f ^= low
        if left:
            val = _probe_ls(n, masks, m, table, pow3, L | low, R, fr ^ low, False, idx + pow3[v])
            if val > best:
                best = val
        else:
            val = _probe_ls(n, masks, m, table, pow3, L, R | low, fr ^ low, True, idx + 2 * pow3[v])
            if val < best:
                best = val
    table[idx] = best
    return best


def probe_green(int n, int max_edges, int limit=100):
    """Scan every simple all-green hypergraph on ``n`` vertices with at most
    ``max_edges`` hyperedges; report those with ``2*Ls > max_degree + 1``.

    Returns ``(count, violations, best)`` where ``best`` is the hypergraph
    maximising ``2*Ls - max_degree`` as ``(masks, ls, max_degree)``.
    """
    if n > 8:
        raise ValueError("probe limited to 8 vertices")
    cdef int nsub = (1 << n) - 1
    cdef int64_t pow3[9]
    cdef int i, k, depth, ls, delta, v, gap, best_gap = -1000000
    pow3[0] = 1
    for i in range(1, 9):
        pow3[i] = pow3[i - 1] * 3
    cdef short* table = <short*> malloc(pow3[n] * sizeof(short))
    cdef uint64_t masks[64]
    cdef int chosen[64]
    cdef int deg[8]
    cdef long long count = 0
    cdef uint64_t full = (<uint64_t>1 << n) - 1
    violations = []
    best = None
    try:
        for k in range(0, min(max_edges, nsub) + 1):
            # lexicographic k-subsets of {1..nsub}
            for i in range(k):
                chosen[i] = i + 1
            while True:
                for i in range(k):
                    masks[i] = chosen[i]
                for v in range(n):
                    deg[v] = 0
                for i in range(k):
                    for v in range(n):
                        if (masks[i] >> v) & 1:
                            deg[v] += 1
                delta = 0
                for v in range(n):
                    if deg[v] > delta:
                        delta = deg[v]
                for i in range(pow3[n]):
                    table[i] = SENTINEL
                ls = _probe_ls(n, masks, k, table, pow3, 0, 0, full, True, 0)
                count += 1
                gap = 2 * ls - delta
                if gap > best_gap:
                    best_gap = gap
                    best = ([int(masks[i]) for i in range(k)], ls, delta)
                if 2 * ls > delta + 1 and len(violations) < limit:
                    violations.append(([int(masks[i]) for i in range(k)], ls, delta))
                # advance combination
                depth = k - 1
                while depth >= 0 and chosen[depth] == nsub - (k - 1 - depth):
                    depth -= 1
                if depth < 0:
                    break
                chosen[depth] += 1
                for i in range(depth + 1, k):
                    chosen[i] = chosen[i - 1] + 1
    finally:
        free(table)
    return count, violations, best
