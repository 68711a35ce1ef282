"""Board files, result records and DOT export.

Board file::

    # comment
    hypergraph <n> <m> [multi]
    B 0 1 2          one line per hyperedge: colour letter then vertices
    L: 0 3           optional, Left's vertices
    R: 5             optional, Right's vertices

``graph <n> <m>`` is shorthand for an all-blue graph with ``u v`` edge lines.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field

from .core import BoardError, Color, Position, build_hypergraph


class BoardParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int(tok: tuple[str, int], ln: int) -> int:
    try:
        return int(tok[0])
    except ValueError:
        raise BoardParseError(f"expected an integer, got {tok[0]!r}", ln, tok[1]) from None


def parse_board(text: str) -> Position:
    n = None
    kind = ""
    expected = 0
    edges = []
    claims: dict[str, list[int] | None] = {"L": None, "R": None}
    multi = False
    for ln, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        if n is None:
            kind = toks[0][0]
            if kind not in ("hypergraph", "graph"):
                raise BoardParseError(f"expected 'hypergraph' or 'graph' header, got {kind!r}", ln)
            if len(toks) not in (3, 4) or (len(toks) == 4 and toks[3][0] != "multi"):
                raise BoardParseError(f"header must be '{kind} <n> <m> [multi]'", ln)
            n, expected = _int(toks[1], ln), _int(toks[2], ln)
            if n < 0 or expected < 0:
                raise BoardParseError("sizes must be nonnegative", ln, toks[1][1])
            multi = len(toks) == 4
            continue
        head = toks[0][0]
        if head in ("L:", "R:"):
            side = head[0]
            if claims[side] is not None:
                raise BoardParseError(f"duplicate {head} line", ln)
            vs = []
            for tok in toks[1:]:
                v = _int(tok, ln)
                if not 0 <= v < n:
                    raise BoardParseError(f"vertex {v} out of range for n={n}", ln, tok[1])
                vs.append(v)
            claims[side] = vs
            continue
        if claims["L"] is not None or claims["R"] is not None:
            raise BoardParseError("edge lines must come before L:/R: lines", ln)
        if kind == "graph":
            if len(toks) != 2:
                raise BoardParseError("graph edge lines are 'u v'", ln)
            color, vtoks = Color.BLUE, toks
        else:
            if head not in ("B", "R", "G"):
                raise BoardParseError(f"edge colour must be B, R or G, got {head!r}", ln, toks[0][1])
            if len(toks) < 2:
                raise BoardParseError("hyperedge needs at least one vertex", ln)
            color, vtoks = Color(head), toks[1:]
        vs = []
        for tok in vtoks:
            v = _int(tok, ln)
            if not 0 <= v < n:
                raise BoardParseError(f"vertex {v} out of range for n={n}", ln, tok[1])
            if v in vs:
                raise BoardParseError(f"vertex {v} repeated in one hyperedge", ln, tok[1])
            vs.append(v)
        edges.append((vs, color))
    if n is None:
        raise BoardParseError("empty board file", 1)
    if len(edges) != expected:
        raise BoardParseError(f"header announces {expected} edges, found {len(edges)}", 1)
    try:
        board = build_hypergraph(n, edges, multi=multi)
        return Position(board, frozenset(claims["L"] or ()), frozenset(claims["R"] or ()))
    except BoardError as exc:
        raise BoardParseError(str(exc), 1) from None


def serialize_board(p: Position) -> str:
    b = p.board
    as_graph = b.is_incidence_mb and not b.multi
    head = "graph" if as_graph else "hypergraph"
    lines = [f"{head} {b.n} {len(b.edges)}" + (" multi" if b.multi else "")]
    for e in b.edges:
        vs = " ".join(map(str, e.vertices))
        lines.append(vs if as_graph else f"{e.color.value} {vs}")
    if p.left:
        lines.append("L: " + " ".join(map(str, sorted(p.left))))
    if p.right:
        lines.append("R: " + " ".join(map(str, sorted(p.right))))
    return "\n".join(lines) + "\n"


def digest(p: Position) -> str:
    return hashlib.sha256(serialize_board(p).encode()).hexdigest()


@dataclass
class ResultRecord:
    input_digest: str
    convention: str
    ls: int | None
    rs: int | None
    optimal_moves: dict = field(default_factory=dict)
    nodes: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    timing: dict | None = None

    def to_json(self) -> str:
        d = asdict(self)
        if d["timing"] is None:
            del d["timing"]
        return json.dumps(d, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        return cls(**json.loads(text))


_DOT_COLORS = {Color.BLUE: "blue", Color.RED: "red", Color.GREEN: "darkgreen"}


def to_dot(p: Position, highlight=()) -> str:
    """Graphviz description; hyperedges wider than 2 become small box nodes."""
    b = p.board
    out = ["graph board {", "  node [shape=circle];"]
    hl = set(highlight)
    for v in range(b.n):
        attrs = []
        if v in p.left:
            attrs += ["style=filled", "fillcolor=lightblue"]
        elif v in p.right:
            attrs += ["style=filled", "fillcolor=salmon"]
        if v in hl:
            attrs.append("penwidth=3")
        out.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for i, e in enumerate(b.edges):
        col = _DOT_COLORS[e.color]
        if len(e.vertices) == 2:
            a, c = e.vertices
            out.append(f"  {a} -- {c} [color={col}];")
        else:
            out.append(f"  e{i} [shape=box, width=0.15, height=0.15, label=\"\", color={col}];")
            out += [f"  e{i} -- {v} [color={col}];" for v in e.vertices]
    out.append("}")
    return "\n".join(out) + "\n"

