import itertools

import pytest

from incidence import checks
from incidence.core import BoardError, Color, Player, Position, graph
from incidence.generators import path, star
from incidence.reductions import (FormulaError, QBFormula, ReductionCertificate, alternate, format_qbf, gadget,
                                  gadget_table, mb_to_mm_universal, parse_qbf, qbf3_to_qmax2sat, qbf_value,
                                  qmax2sat_to_incidence, qmax2sat_value)
from incidence.solver import Engine, SearchBudgetExceeded, score_pair, solve, twin_reduce


def test_gadget_table():
    t = gadget_table()
    assert [t[(n, d)] for n in range(4) for d in (False, True)] == [6, 4, 7, 6, 7, 7, 6, 7]
    assert len(gadget(1, 2, 3, 4)) == 10


def test_qbf_values():
    assert qbf_value(QBFormula(((1, "e"),), ((1, 1, 1),)))
    assert not qbf_value(QBFormula(((1, "a"),), ((1,),)))
    # exists x forall y: (x or y) and (x or not y)
    assert qbf_value(QBFormula(((1, "e"), (2, "a")), ((1, 2), (1, -2))))
    # forall y exists x: (x or y) and (not x or not y)
    assert qbf_value(QBFormula(((2, "a"), (1, "e")), ((1, 2), (-1, -2))))
    assert not qbf_value(QBFormula(((1, "e"), (2, "a")), ((1, 2), (-1, -2))))


def test_qmax2sat_value():
    f = QBFormula(((1, "e"), (2, "a")), ((1, 2), (-1, -2), (1, -2)))
    # x=true: clauses 1 and 3 always hold, clause 2 needs y false; the universal player sets y true
    assert qmax2sat_value(f) == 2
    with pytest.raises(SearchBudgetExceeded):
        qmax2sat_value(QBFormula(tuple((i, "e") for i in range(1, 5)), ()), max_vars=3)


def test_formula_validation():
    with pytest.raises(FormulaError):
        QBFormula(((1, "e"),), ((2,),))
    with pytest.raises(FormulaError):
        QBFormula(((1, "e"), (1, "a")), ())
    with pytest.raises(FormulaError):
        QBFormula(((1, "x"),), ())
    with pytest.raises(FormulaError):
        QBFormula(((1, "e"),), ((),))


def test_sat_chain_shape():
    f = QBFormula(((1, "e"), (2, "a"), (3, "e")), ((1, 2, 3), (-1, -2, 3)))
    g, k = qbf3_to_qmax2sat(f)
    assert k == 14 and len(g.clauses) == 20 and g.width() == 2
    assert g.prefix[-1] == (6, "a")
    with pytest.raises(FormulaError):
        qbf3_to_qmax2sat(QBFormula(((1, "e"),), ((1,),)))


def test_sat_chain_small_exhaustive():
    for f in checks.width3_formulas(2, 2):
        g, k = qbf3_to_qmax2sat(f)
        assert qbf_value(f) == (qmax2sat_value(g) >= k)


def test_alternate_prefix():
    f = QBFormula(((1, "a"), (2, "a"), (3, "e")), ())
    assert alternate(f) == [(None, "e"), (1, "a"), (None, "e"), (2, "a"), (3, "e"), (None, "a")]


def test_incidence_graph_counts():
    f = QBFormula(((1, "e"), (2, "a")), ((1, 2),))
    board, cert = qmax2sat_to_incidence(f, 1)
    big_n, n_prime, k_prime = ReductionCertificate.counts(1, 1, 1)
    assert (cert.n, cert.m, cert.leaves) == (1, 1, big_n)
    assert board.n == big_n + 6 and len(board.edges) == big_n + 1
    assert cert.k_prime == k_prime == n_prime + 1
    assert cert.slots == (2, 1)
    assert board.is_incidence_mb


def test_incidence_graph_rejects_bad_clauses():
    with pytest.raises(FormulaError):
        qmax2sat_to_incidence(QBFormula(((1, "e"),), ((1, -1),)), 1)
    with pytest.raises(FormulaError):
        qmax2sat_to_incidence(QBFormula(((1, "e"),), ((1,),)), 1)


def test_duplicate_clauses_give_a_multigraph():
    f = QBFormula(((1, "e"), (2, "a")), ((1, 2), (1, 2)))
    board, _ = qmax2sat_to_incidence(f, 1)
    assert board.multi and board.pair_multiplicity == 2


def test_graph_reduction_two_variables():
    eng = Engine()
    for f in checks.width2_formulas(2, 2):
        board, cert = qmax2sat_to_incidence(f, 1)
        rs = solve(twin_reduce(Position(board)), Player.RIGHT, cache=eng).value
        assert rs == cert.n_prime + cert.m - qmax2sat_value(f)


def test_lift():
    g = star(2)
    lift = mb_to_mm_universal(g)
    assert lift.n == 4 and lift.colors == {Color.GREEN}
    assert all(3 in e.vertices for e in lift.edges)
    for n in range(1, 5):
        for mask in range(1 << (n * (n - 1) // 2)):
            pairs = [p for i, p in enumerate(itertools.combinations(range(n), 2)) if mask >> i & 1]
            h = graph(n, pairs)
            assert score_pair(Position(mb_to_mm_universal(h))).ls == score_pair(Position(h)).rs
    with pytest.raises(BoardError):
        mb_to_mm_universal(path(3, Color.GREEN))


def test_qbf_text_round_trip():
    f = QBFormula(((1, "e"), (2, "a")), ((1, -2), (2,)))
    assert parse_qbf(format_qbf(f)) == f
    assert parse_qbf("c comment\ne1 a2\n1 -2 0\n2 0\n") == f
    for bad in ("", "x1\n", "e1\n1 1\n", "e1\n1 y 0\n", "e1\n2 0\n"):
        with pytest.raises(FormulaError):
            parse_qbf(bad)
