from fractions import Fraction

import pytest
from hypothesis import given, settings

from boards import simple_graphs
from incidence.core import BoardError, Color, Hypergraph, NotTerminalError, Player, Position, build_hypergraph, graph
from incidence.formulas import (RESIDUAL_TABLE_SHA256, PathResidual, binary_tree_score, claimed_path,
                                derive_residual_table, es_bounds, mb_claimed_path_score, mb_cycle_score,
                                mb_path_score, mb_union_paths_score, mm_delta_bounds, mm_optimal_move, mm_score,
                                path_residual, potential, potential_delta, potential_greedy_move, residual_table,
                                table_digest)
from incidence.generators import complete, cycle, fig1, fig3_star, path, star, union_paths
from incidence.solver import Engine, score_pair, solve


def test_path_closed_form():
    assert [mb_path_score(n) for n in (1, 3, 6, 8, 10)] == [(0, 0), (1, 0), (1, 1), (2, 1), (2, 1)]
    assert mb_path_score(100) == (20, 19)
    with pytest.raises(BoardError):
        mb_path_score(0)


def test_claimed_path_closed_form():
    assert [tuple(mb_claimed_path_score(n)) for n in (1, 2, 5, 6, 11)] == [(0, 0), (1, 0), (1, 1), (2, 1), (3, 2)]


@pytest.mark.parametrize("n", range(1, 13))
def test_path_forms_match_solver(n):
    assert mb_path_score(n) == score_pair(Position(path(n)))
    assert mb_claimed_path_score(n) == score_pair(claimed_path(n))


def test_residual_table_file():
    text = derive_residual_table(Engine())
    assert table_digest(text) == RESIDUAL_TABLE_SHA256
    assert residual_table()[(0, 3)] == (3, 2)
    assert residual_table()[(1, 2)] == (2, 2)


def test_union_examples():
    assert mb_union_paths_score([3, 3]) == (1, 1)
    assert mb_union_paths_score([5, 5, 5, 5]) == (3, 3)
    assert mb_union_paths_score([5, 5, 3]) == (2, 2)
    assert path_residual([8, 4, 3]) == PathResidual(2, 1, 0)
    with pytest.raises(ValueError):
        PathResidual(0, 2, 0)


@pytest.mark.parametrize("lengths", [[1, 2, 9], [4, 4, 4], [6, 7], [5, 10, 3, 2]])
def test_union_matches_solver(lengths):
    assert mb_union_paths_score(lengths) == score_pair(Position(union_paths(lengths)))


@pytest.mark.parametrize("n", range(3, 12))
def test_cycles(n):
    assert mb_cycle_score(n) == score_pair(Position(cycle(n)))



def test_binary_trees():
    assert [binary_tree_score(k) for k in range(4)] == [(0, 0), (1, 0), (2, 1), (4, 3)]


def test_mm_score_examples():
    assert mm_score(fig1()) == 2
    assert mm_score(complete(4, Color.GREEN)) == 0
    assert mm_score(star(3, Color.GREEN)) == 1
    assert mm_optimal_move(Position(fig1())) == 5
    with pytest.raises(BoardError):
        mm_score(fig3_star(3))


@settings(max_examples=120, deadline=None)
@given(simple_graphs(max_n=9, color=Color.GREEN))
def test_mm_score_matches_solver(g):
    assert mm_score(g) == solve(Position(g), engine="bitmask").value


@settings(max_examples=80, deadline=None)
@given(simple_graphs(max_n=8, color=Color.GREEN))
def test_greedy_max_degree_move_is_optimal(g):
    p = Position(g)
    r = solve(p, engine="bitmask")
    assert r.child_values[mm_optimal_move(p)] == r.value


def test_mm_delta_window():
    assert mm_delta_bounds(fig1()) == (0, 2)
    assert mm_delta_bounds(fig3_star(4)) == (0, 4)


def test_potential_values():
    p = Position(path(3))
    assert potential(p) == Fraction(1, 2)
    assert potential(p.claim(Player.LEFT, 1)) == Fraction(1)
    assert potential_delta(p, 1) == Fraction(1, 2)
    assert potential_greedy_move(p) == 1
    with pytest.raises(NotTerminalError):
        potential_greedy_move(Position(path(1), frozenset({0})))
    with pytest.raises(BoardError):
        potential(Position(path(3, Color.GREEN)))


def test_es_bounds_examples():
    assert es_bounds(complete(8)) == (Fraction(6), Fraction(7))
    assert es_bounds(Hypergraph(5)) == (Fraction(-5, 8), Fraction(0))
    multi = build_hypergraph(3, [((0, 1, 2), "B"), ((0, 1), "B")])
    assert es_bounds(multi) == (Fraction(3, 8) - Fraction(6, 8), Fraction(3, 8))


@settings(max_examples=120, deadline=None)
@given(simple_graphs(max_n=8))
def test_es_sandwich(g):
    lo, hi = es_bounds(g)
    s = score_pair(Position(g), engine="bitmask")
    assert lo <= s.ls and s.rs <= hi


def test_empty_union():
    assert mb_union_paths_score([]) == (0, 0)
    assert score_pair(Position(graph(0, []))) == (0, 0)
