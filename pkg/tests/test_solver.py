import random

import pytest
from hypothesis import given, settings

from boards import graph_positions, positions
from incidence import checks
from incidence.core import BoardError, Color, Player, Position, constant, disjoint_sum, graph, negate
from incidence.generators import FORK_U, FORK_V, binary_tree, complete, cycle, fig2, path, star
from incidence.solver import (Engine, ScorePair, SearchBudgetExceeded, SolveOptions, canonical_key, dominates,
                              milnor_equivalent, score_pair, solve, twin_reduce)

OPTION_SETS = [
    {},
    {"symmetry": False, "domination": False},
    {"alphabeta": True},
    {"domination": False, "alphabeta": True},
]


def test_small_values():
    assert score_pair(Position(path(3))) == (1, 0)
    assert score_pair(Position(complete(8))) == (6, 6)
    assert score_pair(Position(cycle(3))) == (1, 0)
    assert score_pair(Position(star(3))) == (1, 0)
    assert score_pair(Position(graph(0, []))) == (0, 0)


def test_terminal_position():
    p = Position(path(2), frozenset({0, 1}))
    r = solve(p)
    assert r.value == 1 and r.optimal_moves == ()


def test_fork_board_moves():
    p = Position(fig2())
    a = solve(p, Player.LEFT)
    b = solve(p, Player.RIGHT)
    assert (a.value, a.optimal_moves) == (4, (FORK_U,))
    assert (b.value, b.optimal_moves) == (2, (FORK_V,))
    assert a.child_values[FORK_U] == 4


@pytest.mark.parametrize("opts", OPTION_SETS)
def test_option_sets_agree_with_bitmask(opts):
    rng = random.Random(5)
    for _ in range(60):
        p = checks.random_board(rng, 7)
        for who in Player:
            got = solve(p, who, **opts)
            want = solve(p, who, engine="bitmask")
            assert got.value == want.value
            assert got.optimal_moves == want.optimal_moves


@settings(max_examples=150, deadline=None)
@given(positions(max_n=7))
def test_canonical_matches_bitmask(p):
    for who in Player:
        a = solve(p, who)
        b = solve(p, who, engine="bitmask")
        assert (a.value, a.optimal_moves) == (b.value, b.optimal_moves)


@settings(max_examples=100, deadline=None)
@given(positions(max_n=6))
def test_nonzugzwang_and_negation(p):
    s = score_pair(p)
    assert s.ls >= s.rs
    assert score_pair(negate(p)) == (-s.rs, -s.ls)


@settings(max_examples=100, deadline=None)
@given(positions(max_n=4), positions(max_n=4))
def test_sum_sandwich(g, h):
    sg, sh, ss = score_pair(g), score_pair(h), score_pair(disjoint_sum(g, h))
    assert sg.rs + sh.rs <= ss.rs <= sg.ls + sh.rs <= ss.ls <= sg.ls + sh.ls


def test_shared_cache_gives_same_answers():
    eng = Engine()
    for n in range(1, 12):
        assert score_pair(Position(path(n)), cache=eng) == score_pair(Position(path(n)))
    assert eng.hits > 0


def test_workers_match_serial():
    p = Position(fig2())
    a, b = solve(p, workers=2), solve(p)
    # node counts differ: the workers do not share a table
    assert (a.value, a.optimal_moves, a.child_values) == (b.value, b.optimal_moves, b.child_values)


def test_twin_reduction_option():
    assert score_pair(Position(binary_tree(3)), twin_reduction=True) == (4, 3)
    with pytest.raises(BoardError):
        solve(Position(path(3, Color.GREEN)), twin_reduction=True)


def test_twin_reduce_examples():
    q = twin_reduce(Position(path(3)))
    assert q.left == {0} and q.right == {2}
    t = twin_reduce(Position(binary_tree(2)))
    assert sorted(t.left) == [1, 3, 5] and sorted(t.right) == [2, 4, 6]


@settings(max_examples=150, deadline=None)
@given(graph_positions(max_n=7))
def test_twin_reduce_preserves_scores(p):
    q = twin_reduce(p)
    assert len(q.left - p.left) == len(q.right - p.right)
    assert score_pair(q, engine="bitmask") == score_pair(p, engine="bitmask")


def test_dominates_examples():
    p = Position(path(2))
    assert dominates(p, 0, 1) and dominates(p, 1, 0)
    s = Position(star(3))
    assert dominates(s, 0, 1) and not dominates(s, 1, 0)
    with pytest.raises(BoardError):
        dominates(Position(path(2), frozenset({0})), 0, 1)


@settings(max_examples=150, deadline=None)
@given(graph_positions(max_n=7))
def test_dominating_moves_are_no_worse(p):
    free = p.free
    for v in free:
        for u in free:
            if u != v and dominates(p, v, u):
                for who in Player:
                    r = solve(p, who, engine="bitmask")
                    better = (lambda a, b: a >= b) if who is Player.LEFT else (lambda a, b: a <= b)
                    assert better(r.child_values[v], r.child_values[u])


def test_budget_is_reported():
    rng = random.Random(3)
    p = checks.random_board(rng, 7)
    while len(p.free) < 6:
        p = checks.random_board(rng, 7)
    with pytest.raises(SearchBudgetExceeded):
        solve(p, max_nodes=2, symmetry=False, domination=False)
    with pytest.raises(SearchBudgetExceeded):
        solve(p, engine="bitmask", max_nodes=2)


def test_unknown_engine():
    with pytest.raises(ValueError):
        solve(Position(path(3)), engine="nope")


def test_milnor_equivalence():
    P = lambda n: Position(path(n))  # noqa: E731
    assert milnor_equivalent(P(4), P(3))
    assert milnor_equivalent(P(6), disjoint_sum(P(1), constant(1)))
    assert not milnor_equivalent(P(3), constant(0))
    with pytest.raises(SearchBudgetExceeded):
        milnor_equivalent(P(30), P(30), max_free=10)


def test_canonical_key_ignores_labels_and_order():
    a = disjoint_sum(Position(path(3)), Position(star(3)))
    b = disjoint_sum(Position(graph(4, [(3, 0), (3, 1), (3, 2)])), Position(graph(3, [(2, 0), (0, 1)])))
    assert canonical_key(a, Player.LEFT) == canonical_key(b, Player.LEFT)
    assert canonical_key(a, Player.LEFT) != canonical_key(a, Player.RIGHT)
    assert canonical_key(a, Player.LEFT) != canonical_key(Position(path(7)), Player.LEFT)


def test_score_pair_named():
    s = score_pair(Position(path(8)))
    assert isinstance(s, ScorePair) and s.ls == 2 and s.rs == 1


def test_options_object():
    opts = SolveOptions(engine="bitmask")
    assert solve(Position(path(5)), Player.RIGHT, opts).value == 0
