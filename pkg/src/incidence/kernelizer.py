"""Neighbourhood-diversity kernel for the Maker-Breaker decision problem on graphs.

A decision instance asks whether Left reaches at least ``k`` points when
``first`` moves first. ``kernelize`` shrinks it to at most ``w*w + w``
vertices, where ``w`` is the number of neighbourhood types, in four steps:

1. split every type class with two or more free vertices between the players;
2. drop Left-Left edges (each one is a point already banked) and Right's vertices;
3. while some free vertex is far ahead of the next one in Left-claimed
   neighbours, shave the surplus off and bank it;
4. rebuild the Left-claimed side as a fresh set ``U`` sized to the largest
   remaining count.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import BoardError, Hypergraph, Player, Position, graph
from .solver import solve


@dataclass(frozen=True)
class TypePartition:
    classes: tuple[tuple[int, ...], ...]
    cliques: tuple[bool, ...]

    @property
    def nd(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}


@dataclass(frozen=True)
class KernelInstance:
    position: Position
    k: int
    first: Player = Player.LEFT

    def decide(self, **options) -> bool:
        """Exact answer by solving the game."""
        return solve(self.position, self.first, **options).value >= self.k


@dataclass
class KernelTranscript:
    normalized: bool = False
    step1_pairs: list[tuple[int, int]] = field(default_factory=list)
    step2_edges_removed: int = 0
    step3_rounds: list[tuple[int, int, int]] = field(default_factory=list)  # (i, s, k decrease)
    step4_u_size: int = 0
    trivial: str | None = None  # "true" or "false" when the output is a constant instance

    def to_text(self) -> str:
        lines = []
        if self.normalized:
            lines.append("normalize")
        lines += [f"step1 {a} {b}" for a, b in self.step1_pairs]
        lines.append(f"step2 removed {self.step2_edges_removed}")
        lines += [f"step3 {i} {s} {d}" for i, s, d in self.step3_rounds]
        lines.append(f"step4 u {self.step4_u_size}")
        if self.trivial:
            lines.append(f"trivial {self.trivial}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KernelTranscript":
        t = cls()
        for n, raw in enumerate(text.splitlines(), 1):
            parts = raw.split()
            if not parts:
                continue
            try:
                tag = parts[0]
                if tag == "normalize":
                    t.normalized = True
                elif tag == "step1":
                    t.step1_pairs.append((int(parts[1]), int(parts[2])))
                elif tag == "step2":
                    t.step2_edges_removed = int(parts[2])
                elif tag == "step3":
                    t.step3_rounds.append((int(parts[1]), int(parts[2]), int(parts[3])))
                elif tag == "step4":
                    t.step4_u_size = int(parts[2])
                elif tag == "trivial":
                    t.trivial = parts[1]
                else:
                    raise ValueError(f"unknown tag {tag!r}")
            except (IndexError, ValueError) as exc:
                raise ValueError(f"transcript line {n}: {exc}") from None
        return t


def _require_graph(h: Hypergraph):
    if not h.is_incidence_mb or h.pair_multiplicity > 1:
        raise BoardError("kernelization needs a simple all-blue graph")


def nd_partition(g: Hypergraph) -> TypePartition:
    """Coarsest partition into neighbourhood types.

    ``u`` and ``v`` share a type when ``N(u) - {v} == N(v) - {u}``, which
    happens exactly when their open or their closed neighbourhoods agree.
    """
    if not g.is_two_uniform:
        raise BoardError("neighbourhood types need a 2-uniform board")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for closed in (False, True):
        first: dict[frozenset, int] = {}
        for v in range(g.n):
            key = g.neighbors[v] | {v} if closed else g.neighbors[v]
            if key in first:
                a, b = find(first[key]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[key] = v
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    classes = tuple(sorted(tuple(m) for m in groups.values()))
    cliques = tuple(len(c) > 1 and c[1] in g.neighbors[c[0]] for c in classes)
    return TypePartition(classes, cliques)


def neighborhood_diversity(g: Hypergraph) -> int:
    return nd_partition(g).nd


def normalize(p: Position) -> Position:
    """Fresh position equivalent to ``p``.

    Right's vertices go away with their edges; every Left vertex gets a twin
    with the same neighbourhood and both are freed.
    """
    keep = [v for v in range(p.board.n) if v not in p.right]
    index = {v: i for i, v in enumerate(keep)}
    nb = [set() for _ in keep]
    for e in p.board.edges:
        a, b = e.vertices
        if a in index and b in index:
            nb[index[a]].add(index[b])
            nb[index[b]].add(index[a])
    for v in sorted(p.left):
        u = index[v]
        twin = len(nb)
        nb.append(set(nb[u]))
        for w in nb[u]:
            nb[w].add(twin)
    edges = sorted({(min(a, b), max(a, b)) for a in range(len(nb)) for b in nb[a]})
    return Position(graph(len(nb), edges))


def _trivial(value: bool, inst: KernelInstance) -> KernelInstance:
    return KernelInstance(Position(Hypergraph(0)), 0 if value else 1, inst.first)


def kernelize(inst: KernelInstance, literal_share: bool = False) -> tuple[KernelInstance, KernelTranscript]:
    """Shrink a decision instance; the answer is unchanged.

    Step 3 banks ``s`` points for each of Left's turns among the first ``i``
    moves: ``ceil(i/2)`` of them when Left starts, ``floor(i/2)`` when Right
    does. ``literal_share=True`` always uses ``ceil(i/2)``.
    """
    _require_graph(inst.position.board)
    t = KernelTranscript()
    p = inst.position
    if p.left or p.right:
        p = normalize(p)
        t.normalized = True
    return _run(p, inst, t, literal_share, None)


def replay(inst: KernelInstance, transcript: KernelTranscript) -> KernelInstance:
    """Rebuild the kernel from its transcript without re-deciding any step."""
    _require_graph(inst.position.board)
    p = normalize(inst.position) if transcript.normalized else inst.position
    out, _ = _run(p, inst, KernelTranscript(transcript.normalized), False, transcript)
    return out


def _run(p: Position, inst: KernelInstance, t: KernelTranscript, literal_share: bool,
         script: KernelTranscript | None) -> tuple[KernelInstance, KernelTranscript]:
    g = p.board
    k = inst.k

    # step 1
    if script is None:
        pairs = []
        for cls in nd_partition(g).classes:
            for j in range(0, len(cls) - 1, 2):
                pairs.append((cls[j], cls[j + 1]))
    else:
        pairs = list(script.step1_pairs)
    t.step1_pairs = pairs
    left = {a for a, _ in pairs}
    right = {b for _, b in pairs}
    assert len(left) == len(right)  # the mover is unchanged

    # step 2
    inside = sum(1 for e in g.edges if e.vertices[0] in left and e.vertices[1] in left)
    if script is not None and script.step2_edges_removed != inside:
        raise ValueError("transcript does not match the instance at step 2")
    t.step2_edges_removed = inside
    k -= inside
    free = [v for v in range(g.n) if v not in left and v not in right]
    r = len(free)
    pcount = {v: len(g.neighbors[v] & left) for v in free}
    free_edges = [e.vertices for e in g.edges if e.vertices[0] in pcount and e.vertices[1] in pcount]

    # step 3
    def order():
        return sorted(free, key=lambda v: (-pcount[v], v))

    rounds = list(script.step3_rounds) if script is not None else None
    while True:
        vs = order()
        ps = [pcount[v] for v in vs] + [0]
        if rounds is not None:
            if not rounds:
                break
            i, s, dk = rounds.pop(0)
        else:
            hit = next((i for i in range(1, r + 1) if ps[i - 1] > ps[i] + r), None)
            if hit is None:
                break
            i = hit
            s = ps[i - 1] - ps[i] - r
            share = (i + 1) // 2 if (literal_share or inst.first is Player.LEFT) else i // 2
            dk = s * share
        for v in vs[:i]:
            pcount[v] -= s
        k -= dk
        t.step3_rounds.append((i, s, dk))

    # step 4
    vs = order()
    u_size = pcount[vs[0]] if vs else 0
    t.step4_u_size = u_size
    local = {v: j for j, v in enumerate(free)}
    edges = [(local[a], local[b]) for a, b in free_edges]
    for v in free:
        edges.extend((local[v], r + j) for j in range(pcount[v]))
    out_board = graph(r + u_size, edges)
    out = KernelInstance(Position(out_board, frozenset(range(r, r + u_size))), k, inst.first)

    if script is not None and script.trivial:
        t.trivial = script.trivial
    elif k <= 0:
        t.trivial = "true"
    elif k > len(out_board.edges):
        t.trivial = "false"
    if t.trivial:
        out = _trivial(t.trivial == "true", inst)
    return out, t
