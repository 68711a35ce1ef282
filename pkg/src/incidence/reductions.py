"""Hardness constructions and the brute-force formula evaluators that check them.

Formulas are prenex CNF. Variables are positive ints, literals signed ints,
the prefix lists ``(variable, "e" | "a")`` outermost first. Evaluation is
the usual two-player reading: the existential player picks ``e`` variables
and maximises, the universal player picks ``a`` variables and minimises.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import BoardError, Color, Hypergraph, build_hypergraph
from .solver import SearchBudgetExceeded

EXISTS, FORALL = "e", "a"


class FormulaError(ValueError):
    """Malformed formula or formula text."""


@dataclass(frozen=True)
class QBFormula:
    prefix: tuple[tuple[int, str], ...]
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((int(v), q) for v, q in self.prefix))
        object.__setattr__(self, "clauses", tuple(tuple(int(l) for l in c) for c in self.clauses))
        seen = set()
        for v, q in self.prefix:
            if v <= 0:
                raise FormulaError(f"variable ids must be positive, got {v}")
            if q not in (EXISTS, FORALL):
                raise FormulaError(f"unknown quantifier {q!r}")
            if v in seen:
                raise FormulaError(f"variable {v} quantified twice")
            seen.add(v)
        for c in self.clauses:
            if not c:
                raise FormulaError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) not in seen:
                    raise FormulaError(f"literal {lit} has no quantified variable")

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.prefix)

    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfied(self, assignment: dict[int, bool]) -> int:
        return sum(1 for c in self.clauses if any(assignment[abs(l)] == (l > 0) for l in c))


# evaluators -----------------------------------------------------------------

MAX_ORACLE_VARS = 22


def _guard(f: QBFormula, max_vars: int):
    if len(f.prefix) > max_vars:
        raise SearchBudgetExceeded(f"{len(f.prefix)} variables exceed the oracle budget of {max_vars}")


def _game(f: QBFormula, leaf) -> int:
    assignment: dict[int, bool] = {}

    def go(i: int) -> int:
        if i == len(f.prefix):
            return leaf(assignment)
        v, q = f.prefix[i]
        vals = []
        for b in (False, True):
            assignment[v] = b
            vals.append(go(i + 1))
        del assignment[v]
        return max(vals) if q == EXISTS else min(vals)

    return go(0)


def qbf_value(f: QBFormula, max_vars: int = MAX_ORACLE_VARS) -> bool:
    """Truth value of the quantified CNF."""
    _guard(f, max_vars)
    m = len(f.clauses)
    return bool(_game(f, lambda a: int(f.satisfied(a) == m)))


def qmax2sat_value(f: QBFormula, max_vars: int = MAX_ORACLE_VARS) -> int:
    """Number of clauses satisfied under optimal play by both quantifier players."""
    _guard(f, max_vars)
    return _game(f, f.satisfied)


# 3-QBF to quantified MAX-2-SAT ------------------------------------------------

def gadget(l1: int, l2: int, l3: int, d: int) -> list[tuple[int, ...]]:
    """The ten short clauses standing in for ``l1 or l2 or l3``."""
    return [(l1,), (l2,), (l3,), (d,),
            (-l1, -l2), (-l1, -l3), (-l2, -l3),
            (-d, l1), (-d, l2), (-d, l3)]


def gadget_table() -> dict[tuple[int, bool], int]:
    """Satisfied gadget clauses by (true literals, value of d), over all valuations.

    Raises if two valuations with the same key disagree.
    """
    table: dict[tuple[int, bool], int] = {}
    cls = gadget(1, 2, 3, 4)
    for bits in product((False, True), repeat=4):
        a = dict(zip((1, 2, 3, 4), bits))
        key = (sum(bits[:3]), bits[3])
        got = sum(1 for c in cls if any(a[abs(l)] == (l > 0) for l in c))
        if table.setdefault(key, got) != got:
            raise AssertionError(f"gadget count depends on more than {key}")
    return table


def qbf3_to_qmax2sat(f: QBFormula) -> tuple[QBFormula, int]:
    """Quantified MAX-2-SAT instance ``(g, k)`` with ``value(g) >= k`` iff ``f`` is true.

    One fresh existential ``d`` per clause goes innermost, then a single
    universal padding variable that turns every unit clause into a pair.
    """
    if any(len(c) != 3 for c in f.clauses):
        raise FormulaError("every clause must have exactly three literals")
    top = max(f.variables, default=0)
    m = len(f.clauses)
    pad = top + m + 1
    clauses = []
    for i, (l1, l2, l3) in enumerate(f.clauses):
        for c in gadget(l1, l2, l3, top + 1 + i):
            clauses.append(c if len(c) == 2 else (c[0], pad))
    prefix = list(f.prefix) + [(top + 1 + i, EXISTS) for i in range(m)]
    if m:
        prefix.append((pad, FORALL))
    return QBFormula(tuple(prefix), tuple(clauses)), 7 * m


# quantified MAX-2-SAT to Maker-Breaker Incidence ------------------------------

@dataclass(frozen=True)
class ReductionCertificate:
    """How the graph was built.

    ``slots[i-1]`` is the variable in position ``i`` (``x_i``; ``x_2n`` is
    outermost), ``None`` for padding. ``vertex_map`` sends each formula
    variable to its three centres ``(v, not v, tilde v)``.
    """
    slots: tuple[int | None, ...]
    vertex_map: dict = field(hash=False)
    m: int
    n: int  # number of existential/universal rounds; there are 2n slots
    k: int
    k_prime: int
    n_prime: int
    leaves: int

    @staticmethod
    def counts(m: int, n: int, k: int) -> tuple[int, int, int]:
        """``(N, N', k')`` for ``m`` clauses, ``2n`` slots and threshold ``k``."""
        big_n = 6 * m * n * (2 * n + 1)
        n_prime = 3 * m * n * (n + 1) - 2 * m * n
        return big_n, n_prime, n_prime + m - k + 1


def alternate(f: QBFormula) -> list[tuple[int | None, str]]:
    """Prefix padded with clause-free variables to ``e a e a ... e a``."""
    out: list[tuple[int | None, str]] = []
    for v, q in f.prefix:
        want = EXISTS if len(out) % 2 == 0 else FORALL
        if q != want:
            out.append((None, want))
        out.append((v, q))
    if len(out) % 2:
        out.append((None, FORALL))
    return out


def qmax2sat_to_incidence(f: QBFormula, k: int) -> tuple[Hypergraph, ReductionCertificate]:
    """Blue graph whose Right-first score reaches ``k'`` iff the universal player wins ``(f, k)``.

    Slot ``i`` owns centres ``3(i-1)``, ``3(i-1)+1``, ``3(i-1)+2`` for
    ``v_i``, its negation and its tilde copy, each carrying ``2mi`` leaves.
    Leaves are numbered after all centres, slot by slot, centre by centre.
    """
    for c in f.clauses:
        if len(c) != 2:
            raise FormulaError("every clause must have exactly two literals")
        if abs(c[0]) == abs(c[1]):
            raise FormulaError(f"clause {c} repeats a variable; it would be a loop")
    seq = alternate(f)
    slots = tuple(v for v, _ in reversed(seq))  # innermost first: x_1, x_2, ...
    m = len(f.clauses)
    n = len(slots) // 2
    centres = 3 * len(slots)
    edges = []
    nxt = centres
    vertex_map = {}
    for i, var in enumerate(slots, start=1):
        base = 3 * (i - 1)
        if var is not None:
            vertex_map[var] = (base, base + 1, base + 2)
        for c in range(3):
            for _ in range(2 * m * i):
                edges.append((base + c, nxt))
                nxt += 1
    for l1, l2 in f.clauses:
        a = vertex_map[abs(l1)][0 if l1 > 0 else 1]
        b = vertex_map[abs(l2)][0 if l2 > 0 else 1]
        edges.append((a, b))
    multi = len({tuple(sorted(e)) for e in edges}) != len(edges)
    board = build_hypergraph(nxt, ((e, Color.BLUE) for e in edges), multi=multi)
    big_n, n_prime, k_prime = ReductionCertificate.counts(m, n, k)
    assert nxt == big_n + centres and len(edges) == big_n + m
    cert = ReductionCertificate(slots, vertex_map, m, n, k, k_prime, n_prime, big_n)
    return board, cert


def mb_to_mm_universal(g: Hypergraph) -> Hypergraph:
    """Add one vertex to every hyperedge and make them all green."""
    if not g.colors <= {Color.BLUE}:
        raise BoardError("lift needs an all-blue board")
    u = g.n
    return build_hypergraph(g.n + 1, ((e.vertices + (u,), Color.GREEN) for e in g.edges), multi=g.multi)


# text format ----------------------------------------------------------------

def parse_qbf(text: str) -> QBFormula:
    """Prefix line ``e1 a2 ...`` then one zero-terminated clause per line; ``c`` starts a comment."""
    prefix = None
    clauses = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if prefix is None:
            prefix = []
            for col, t in enumerate(toks, 1):
                if len(t) < 2 or t[0] not in "ea" or not t[1:].isdigit():
                    raise FormulaError(f"line {n} token {col}: expected e<var> or a<var>, got {t!r}")
                prefix.append((int(t[1:]), t[0]))
            continue
        try:
            lits = [int(t) for t in toks]
        except ValueError:
            raise FormulaError(f"line {n}: clause literals must be integers") from None
        if lits[-1] != 0:
            raise FormulaError(f"line {n}: clause must end with 0")
        clauses.append(tuple(lits[:-1]))
    if prefix is None:
        raise FormulaError("missing prefix line")
    try:
        return QBFormula(tuple(prefix), tuple(clauses))
    except FormulaError as exc:
        raise FormulaError(f"invalid formula: {exc}") from None


def format_qbf(f: QBFormula) -> str:
    lines = [" ".join(f"{q}{v}" for v, q in f.prefix)]
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"

