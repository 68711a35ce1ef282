"""Canonical relabelling of small coloured hypergraph components.

Colour refinement followed by a budgeted individualisation search. Pairs of
vertices whose transposition is an automorphism are branched on once. When
the leaf budget runs out the best labelling seen so far is used: the key is
then less canonical (fewer memo hits) but still an exact encoding of the
component, so equal keys always mean isomorphic components.
"""
from __future__ import annotations

from collections import Counter

LEAF_BUDGET = 48

Edges = tuple[tuple[int, tuple[int, ...]], ...]
Key = tuple[int, Edges]


def _rank(sigs: list) -> list[int]:
    order = sorted(set(sigs))
    index = {s: i for i, s in enumerate(order)}
    return [index[s] for s in sigs]


def _refine(colors: list[int], edges, inc) -> list[int]:
    k = len(colors)
    cells = len(set(colors))
    while True:
        sigs = []
        for v in range(k):
            around = []
            for ei in inc[v]:
                c, vs = edges[ei]
                around.append((c, len(vs), tuple(sorted(colors[u] for u in vs if u != v))))
            around.sort()
            sigs.append((colors[v], tuple(around)))
        new = _rank(sigs)
        ncells = len(set(new))
        if ncells == cells:
            return new
        colors, cells = new, ncells


def _encode(labels: list[int], edges) -> Edges:
    return tuple(sorted((c, tuple(sorted(labels[v] for v in vs))) for c, vs in edges))


def _swappable(a: int, b: int, edges, inc, bag: Counter) -> bool:
    touched = set(inc[a]) | set(inc[b])
    for ei in touched:
        c, vs = edges[ei]
        img = frozenset(b if u == a else a if u == b else u for u in vs)
        if bag[(c, img)] == 0:
            return False
    # transposition maps the touched edges injectively into the bag; compare counts
    before = Counter((edges[ei][0], frozenset(edges[ei][1])) for ei in touched)
    after = Counter(
        (edges[ei][0], frozenset(b if u == a else a if u == b else u for u in edges[ei][1]))
        for ei in touched
    )
    return before == after


def canonical(k: int, edges) -> Key:
    """Canonical key of a component on local vertices ``0..k-1``.

    ``edges`` is a sequence of ``(colour_code, vertex_tuple)``; repeats are
    kept (multi-edges).
    """
    edges = [(c, tuple(vs)) for c, vs in edges]
    if k == 1:
        return (1, tuple(sorted((c, (0,) * len(vs)) for c, vs in edges)))
    inc: list[list[int]] = [[] for _ in range(k)]
    for i, (_, vs) in enumerate(edges):
        for v in vs:
            inc[v].append(i)
    bag = Counter((c, frozenset(vs)) for c, vs in edges)
    start = _refine([0] * k, edges, inc)
    best: list = [None]
    leaves = [0]

    def search(colors: list[int]):
        if leaves[0] >= LEAF_BUDGET and best[0] is not None:
            return
        sizes = Counter(colors)
        open_cells = [c for c, s in sizes.items() if s > 1]
        if not open_cells:
            leaves[0] += 1
            enc = _encode(colors, edges)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        target = min(open_cells, key=lambda c: (sizes[c], c))
        members = [v for v in range(k) if colors[v] == target]
        reps: list[int] = []
        for v in members:
            if any(_swappable(r, v, edges, inc, bag) for r in reps):
                continue
            reps.append(v)
        for v in reps:
            split = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
            search(_refine(_rank(split), edges, inc))
            if leaves[0] >= LEAF_BUDGET:
                return

    search(start)
    return (k, best[0])


def components(vertices, edges) -> list[tuple[list[int], list]]:
    """Split ``edges`` over ``vertices`` into connected pieces.

    Returns ``(members, local_edges)`` pairs, members in input order and
    edges relabelled to member positions.
    """
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, vs in edges:
        r = find(vs[0])
        for u in vs[1:]:
            ru = find(u)
            if ru != r:
                parent[ru] = r
    groups: dict[int, list[int]] = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    local = {}
    for members in groups.values():
        for i, v in enumerate(members):
            local[v] = i
    per: dict[int, list] = {root: [] for root in groups}
    for c, vs in edges:
        per[find(vs[0])].append((c, tuple(local[u] for u in vs)))
    return [(members, per[root]) for root, members in groups.items()]
