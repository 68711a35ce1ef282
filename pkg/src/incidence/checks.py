"""Acceptance checks shared by the test suite and ``incidence selftest``.

Each check returns a :class:`CheckResult`. ``quick=True`` shrinks the
sweeps so the whole set runs in a few seconds; the test suite runs the full
versions.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import generators as gen
from . import kernel
from .core import Color, Player, Position, constant, disjoint_sum, graph, negate
from .formulas import (binary_tree_score, claimed_path, es_bounds, mb_claimed_path_score, mb_cycle_score,
                       mb_path_score, mb_union_paths_score, mm_score)
from .kernelizer import KernelInstance, kernelize, nd_partition
from .reductions import (QBFormula, gadget_table, mb_to_mm_universal, qbf3_to_qmax2sat, qbf_value,
                         qmax2sat_to_incidence, qmax2sat_value)
from .solver import Engine, ScorePair, milnor_equivalent, score_pair, solve, twin_reduce

# first-player scores on short blue paths, orders 1..10
PATH_LS = (0, 0, 1, 1, 1, 1, 1, 2, 2, 2)
PATH_RS = (0, 0, 0, 0, 0, 1, 1, 1, 1, 1)
# same with one end already claimed by Left, orders 1..11
CLAIMED_LS = (0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3)
CLAIMED_RS = (0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2)
GADGET_COUNTS = (6, 4, 7, 6, 7, 7, 6, 7)


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float
    blocking: bool = True

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        if not self.blocking:
            tag = "REPORT"
        return f"[{tag}] {self.number:>2} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _atlas(max_nodes: int):
    import networkx as nx

    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_nodes:
            yield g.number_of_nodes(), sorted(tuple(sorted(e)) for e in g.edges())


def _timed(number: int, name: str, fn, limit: float | None = None, blocking: bool = True) -> CheckResult:
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    if limit is not None and dt > limit:
        ok = False
        detail += f"; over the {limit:.0f}s limit"
    return CheckResult(number, name, ok, detail, dt, blocking)


def path_tables(quick: bool = False) -> CheckResult:
    def run():
        eng = Engine()
        got_p = [score_pair(Position(gen.path(n)), cache=eng) for n in range(1, 11)]
        got_c = [score_pair(claimed_path(n), cache=eng) for n in range(1, 12)]
        ok = ([p.ls for p in got_p] == list(PATH_LS) and [p.rs for p in got_p] == list(PATH_RS)
              and [p.ls for p in got_c] == list(CLAIMED_LS) and [p.rs for p in got_c] == list(CLAIMED_RS))
        return ok, f"paths {[tuple(p) for p in got_p]}; claimed {[tuple(p) for p in got_c]}"

    return _timed(1, "path tables", run, limit=10)


def _multisets(total: int):
    def rec(remaining, largest):
        yield []
        for k in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - k, k):
                yield [k] + rest

    yield from rec(total, total)


def closed_forms(quick: bool = False) -> CheckResult:
    top = 10 if quick else 14
    total = 10 if quick else 20

    def run():
        eng = Engine()
        bad = []
        for n in range(1, top + 1):
            if mb_path_score(n) != score_pair(Position(gen.path(n)), cache=eng):
                bad.append(("path", n))
            if mb_claimed_path_score(n) != score_pair(claimed_path(n), cache=eng):
                bad.append(("claimed", n))
        count = 0
        for lengths in _multisets(total):
            count += 1
            board = gen.union_paths(lengths) if lengths else None
            pos = Position(board) if board is not None else Position(graph(0, []))
            if mb_union_paths_score(lengths) != score_pair(pos, cache=eng):
                bad.append(("union", tuple(lengths)))
        return not bad, f"paths n<={top}, {count} unions with total <= {total}; mismatches {bad[:5]}"

    return _timed(2, "closed forms vs solver", run, limit=300)


def maker_maker(quick: bool = False) -> CheckResult:
    def run():
        eng = Engine()
        bad = []
        count = 0
        for n, edges in _atlas(5 if quick else 7):
            g = graph(n, edges, Color.GREEN)
            count += 1
            if mm_score(g) != score_pair(Position(g), cache=eng).ls:
                bad.append((n, edges))
        rng = random.Random(12)
        for _ in range(20 if quick else 200):
            n = rng.randint(1, 12)
            pairs = [pr for pr in itertools.combinations(range(n), 2) if rng.random() < 0.35]
            g = graph(n, pairs, Color.GREEN)
            count += 1
            if mm_score(g) != solve(Position(g), Player.LEFT, engine="bitmask").value:
                bad.append((n, pairs))
        return not bad, f"{count} graphs; mismatches {len(bad)}"

    return _timed(3, "Maker-Maker degree formula", run)


def equivalences(quick: bool = False) -> CheckResult:
    def run():
        eng = Engine()
        P = lambda n: Position(gen.path(n))  # noqa: E731
        facts = {}
        for n in range(1, 5):
            facts[f"P{n + 5} = P{n} + 1"] = milnor_equivalent(P(n + 5), disjoint_sum(P(n), constant(1)), cache=eng)
            facts[f"score P{n + 5} - P{n} = (1,1)"] = score_pair(disjoint_sum(P(n + 5), negate(P(n))), cache=eng) == (1, 1)
        facts["P1 = 0"] = milnor_equivalent(P(1), constant(0), cache=eng)
        facts["P2 = 0"] = milnor_equivalent(P(2), constant(0), cache=eng)
        facts["2P3 = 1"] = milnor_equivalent(disjoint_sum(P(3), P(3)), constant(1), cache=eng)
        facts["P4 = P3"] = milnor_equivalent(P(4), P(3), cache=eng)
        facts["2P5 + P3 = 2"] = milnor_equivalent(disjoint_sum(P(5), P(5), P(3)), constant(2), cache=eng)
        four = disjoint_sum(*[P(5)] * 4)
        facts["4P5 scores (3,3)"] = score_pair(four, cache=eng) == (3, 3)
        facts["4P5 = 3"] = milnor_equivalent(four, constant(3), cache=eng)
        facts["P3 != 0"] = not milnor_equivalent(P(3), constant(0), cache=eng)
        failed = [k for k, v in facts.items() if not v]
        return not failed, f"{len(facts)} identities; failed {failed}"

    return _timed(4, "equivalence identities", run)


def cycles(quick: bool = False) -> CheckResult:
    def run():
        eng = Engine()
        bad = []
        for n in range(3, 10 if quick else 13):
            got = score_pair(Position(gen.cycle(n)), cache=eng)
            if mb_cycle_score(n) != got or got.rs != score_pair(Position(gen.path(n - 1)), cache=eng).ls:
                bad.append(n)
        return not bad, f"mismatches at {bad}"

    return _timed(5, "cycles", run)


def binary_trees(quick: bool = False) -> CheckResult:
    def run():
        got = {k: score_pair(Position(gen.binary_tree(k)), twin_reduction=True) for k in range(1, 4)}
        ok = all(got[k] == binary_tree_score(k) == ScorePair(2 ** (k - 1), 2 ** (k - 1) - 1) for k in got)
        return ok, f"{ {k: tuple(v) for k, v in got.items()} }"

    return _timed(6, "binary trees", run, limit=60)


def es_sandwich(quick: bool = False) -> CheckResult:
    def run():
        eng = Engine()
        bad = []
        count = 0
        for n, edges in _atlas(5 if quick else 7):
            g = graph(n, edges)
            lo, hi = es_bounds(g)
            s = score_pair(Position(g), cache=eng)
            count += 1
            if not (lo <= s.ls and s.rs <= hi and lo == Fraction(len(edges), 4) - Fraction(n, 8)):
                bad.append((n, edges))
        k8 = score_pair(Position(gen.complete(8)), cache=eng).ls
        two_p3 = score_pair(disjoint_sum(Position(gen.path(3)), Position(gen.path(3))), cache=eng).rs
        tight = k8 == 6 == es_bounds(gen.complete(8))[0] and two_p3 == 1 == es_bounds(gen.union_paths([3, 3]))[1]
        return not bad and tight, f"{count} graphs, violations {len(bad)}; Ls(K8)={k8}, Rs(2P3)={two_p3}"

    return _timed(7, "potential bounds", run)


def unique_optimal_moves(quick: bool = False) -> CheckResult:
    def run():
        p = Position(gen.fig2())
        a = solve(p, Player.LEFT)
        b = solve(p, Player.RIGHT)
        ok = a.value == 4 and a.optimal_moves == (gen.FORK_U,) and b.value == 2 and b.optimal_moves == (gen.FORK_V,)
        return ok, f"Ls={a.value} moves {a.optimal_moves}; Rs={b.value} moves {b.optimal_moves}"

    return _timed(8, "unique optimal moves", run)


def random_nd_graph(rng: random.Random, max_n: int = 10, max_types: int = 5):
    n = rng.randint(1, max_n)
    w = rng.randint(1, max_types)
    label = [rng.randrange(w) for _ in range(n)]
    cliq = [rng.random() < 0.5 for _ in range(w)]
    joined = {(a, b) for a in range(w) for b in range(a + 1, w) if rng.random() < 0.5}
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if (label[u] == label[v] and cliq[label[u]]) or (min(label[u], label[v]), max(label[u], label[v])) in joined]
    return graph(n, edges)


def kernel_check(quick: bool = False) -> CheckResult:
    def run():
        problems = []
        g = gen.fig5()
        out, t = kernelize(KernelInstance(Position(g), 30, Player.LEFT))
        ks = [30, 30 - t.step2_edges_removed, 30 - t.step2_edges_removed - sum(r[2] for r in t.step3_rounds)]
        fig_ok = (nd_partition(g).nd == 5 and ks == [30, 14, 13] and t.step3_rounds == [(1, 1, 1)]
                  and t.step4_u_size == 7 and out.k == 13)
        if not fig_ok:
            problems.append(f"worked example gave k {ks}, rounds {t.step3_rounds}, |U|={t.step4_u_size}")
        rng = random.Random(9)
        graphs = decisions = 0
        while graphs < (60 if quick else 500):
            b = random_nd_graph(rng)
            nd = nd_partition(b).nd
            if nd > 5:
                continue
            graphs += 1
            p = Position(b)
            for first in Player:
                val = solve(p, first, engine="bitmask").value
                for k in range(len(b.edges) + 1):
                    decisions += 1
                    out, t = kernelize(KernelInstance(p, k, first))
                    ob = out.position.board
                    if out.decide() != (val >= k):
                        problems.append(f"decision differs: n={b.n} k={k} first={first.value}")
                    if not t.trivial and (ob.n > nd * nd + nd or len(ob.edges) > nd ** 3 or out.k > nd ** 3):
                        problems.append(f"size bound: n={ob.n} m={len(ob.edges)} k={out.k} nd={nd}")
        return not problems, f"{graphs} graphs, {decisions} decisions; problems {problems[:3]}"

    return _timed(9, "kernelization", run)


def width2_formulas(max_vars: int, max_clauses: int):
    for nv in range(1, max_vars + 1):
        lits = [s * v for v in range(1, nv + 1) for s in (1, -1)]
        pairs = [(a, b) for a, b in itertools.combinations(lits, 2) if abs(a) != abs(b)]
        for qs in itertools.product("ea", repeat=nv):
            prefix = tuple((i + 1, q) for i, q in enumerate(qs))
            for m in range(max_clauses + 1):
                for cl in itertools.combinations_with_replacement(pairs, m):
                    yield QBFormula(prefix, cl)


def width3_formulas(max_vars: int, max_clauses: int):
    for nv in range(1, max_vars + 1):
        lits = [s * v for v in range(1, nv + 1) for s in (1, -1)]
        triples = list(itertools.combinations_with_replacement(lits, 3))
        for qs in itertools.product("ea", repeat=nv):
            prefix = tuple((i + 1, q) for i, q in enumerate(qs))
            for m in range(max_clauses + 1):
                for cl in itertools.combinations_with_replacement(triples, m):
                    yield QBFormula(prefix, cl)


def reductions_check(quick: bool = False) -> CheckResult:
    def run():
        problems = []
        table = gadget_table()
        order = [(nl, d) for nl in range(4) for d in (False, True)]
        if tuple(table[k] for k in order) != GADGET_COUNTS:
            problems.append(f"gadget table {table}")
        sat = 0
        for f in width3_formulas(2 if quick else 3, 1 if quick else 2):
            g, k = qbf3_to_qmax2sat(f)
            sat += 1
            if qbf_value(f) != (qmax2sat_value(g) >= k):
                problems.append(f"sat chain {f}")
        eng = Engine()
        graph_count = 0
        for f in width2_formulas(2 if quick else 4, 2):
            val = qmax2sat_value(f)
            b, cert = qmax2sat_to_incidence(f, 1)
            rs = solve(twin_reduce(Position(b)), Player.RIGHT, cache=eng).value
            graph_count += 1
            for k in range(len(f.clauses) + 2):
                kp = _k_prime(cert, k)
                if (rs >= kp) != (val < k):
                    problems.append(f"graph reduction {f} k={k}")
                    break
        lifts = 0
        for n, edges in _atlas(4 if quick else 5):
            g = graph(n, edges)
            lifts += 1
            lift = mb_to_mm_universal(g)
            if score_pair(Position(lift), cache=eng).ls != score_pair(Position(g), cache=eng).rs:
                problems.append(f"lift {edges}")
        return not problems, (f"gadget table ok={tuple(table[k] for k in order) == GADGET_COUNTS}, "
                              f"{sat} 3-CNF formulas, {graph_count} 2-CNF graphs, {lifts} lifts; "
                              f"problems {problems[:3]}")

    return _timed(10, "reductions", run)


def _k_prime(cert, k: int) -> int:
    """Right-first threshold for formula threshold ``k``."""
    return cert.n_prime + cert.m - k + 1


def random_board(rng: random.Random, max_n: int = 7, colors: str = "BRG", max_arity: int = 3) -> Position:
    n = rng.randint(0, max_n)
    edges = set()
    if n:
        for _ in range(rng.randint(0, 2 * n)):
            k = rng.randint(1, min(max_arity, n))
            edges.add((tuple(sorted(rng.sample(range(n), k))), rng.choice(colors)))
    from .core import build_hypergraph

    b = build_hypergraph(n, sorted(edges))
    vs = list(range(n))
    rng.shuffle(vs)
    a = rng.randint(0, n // 3)
    c = rng.randint(0, n // 3)
    return Position(b, frozenset(vs[:a]), frozenset(vs[a:a + c]))


def invariants(quick: bool = False) -> CheckResult:
    def run():
        rng = random.Random(2024)
        eng = Engine()
        bad = []
        cases = 150 if quick else 1200
        for _ in range(cases):
            g = random_board(rng, 5)
            h = random_board(rng, 4)
            sg, sh = score_pair(g, cache=eng), score_pair(h, cache=eng)
            ss = score_pair(disjoint_sum(g, h), cache=eng)
            sn = score_pair(negate(g), cache=eng)
            if sg.ls < sg.rs or ss.ls < ss.rs:
                bad.append("zugzwang")
            if sn != (-sg.rs, -sg.ls):
                bad.append("negation")
            if not (sg.rs + sh.rs <= ss.rs <= sg.ls + sh.rs <= ss.ls <= sg.ls + sh.ls):
                bad.append("sum bounds")
        return not bad, f"{cases} random pairs; violations {len(bad)} {sorted(set(bad))}"

    return _timed(11, "global invariants", run)


def conjecture_probe(quick: bool = False) -> CheckResult:
    def run():
        n, m = (4, 4) if quick else (5, 6)
        count, violations, best = kernel.probe_green(n, m)
        masks, ls, delta = best
        return True, (f"{count} green hypergraphs on {n} vertices with <= {m} edges; "
                      f"{len(violations)} with 2*Ls > maxdeg+1; largest 2*Ls - maxdeg = {2 * ls - delta} "
                      f"(edges {masks}, Ls={ls}, maxdeg={delta})")

    return _timed(12, "max-degree probe", run, blocking=False)


ALL = (path_tables, closed_forms, maker_maker, equivalences, cycles, binary_trees, es_sandwich,
       unique_optimal_moves, kernel_check, reductions_check, invariants, conjecture_probe)


def run_all(quick: bool = False, echo=None) -> list[CheckResult]:
    out = []
    for check in ALL:
        r = check(quick)
        out.append(r)
        if echo:
            echo(r.line())
    return out
