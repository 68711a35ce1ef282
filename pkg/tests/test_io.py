import json

import pytest
from hypothesis import given

from boards import positions
from incidence.core import Player, Position
from incidence.generators import fig2, path
from incidence.io import BoardParseError, ResultRecord, digest, parse_board, serialize_board, to_dot


def test_graph_shorthand():
    p = parse_board("graph 3 2\n0 1\n1 2")
    assert p == Position(path(3))


def test_claims_are_written():
    text = serialize_board(Position(path(3), frozenset({0})))
    assert text == "graph 3 2\n0 1\n1 2\nL: 0\n"
    assert parse_board(text).left == {0}


def test_out_of_range_reports_position():
    with pytest.raises(BoardParseError) as exc:
        parse_board("hypergraph 2 1\nG 0 1 5")
    assert (exc.value.line, exc.value.column) == (2, 7)
    assert "out of range" in str(exc.value)


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("graf 2 0\n", "header"),
    ("graph 2 1\n", "announces 1"),
    ("graph 2 1\n0 x\n", "integer"),
    ("hypergraph 2 1\nQ 0 1\n", "colour"),
    ("hypergraph 2 1\nB 0 0\n", "repeated"),
    ("graph 3 1\n0 1\nL: 0\nR: 0\n", "both players"),
    ("graph 3 1\n0 1\nL: 0\nL: 1\n", "duplicate"),
    ("graph 2 2\n0 1\n0 1\n", "duplicate hyperedge"),
    ("graph 3 1\nL: 0\n0 1\n", "before"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(BoardParseError) as exc:
        parse_board(text)
    assert fragment in str(exc.value)


def test_comments_and_multi():
    p = parse_board("# two parallel edges\nhypergraph 2 2 multi\nB 0 1\nB 0 1  # again\n")
    assert p.board.multi and len(p.board.edges) == 2
    assert parse_board(serialize_board(p)) == p


@given(positions(max_n=7))
def test_round_trip(p):
    text = serialize_board(p)
    q = parse_board(text)
    assert q == p
    assert serialize_board(q) == text


def test_digest_follows_the_text():
    assert digest(Position(path(3))) == digest(parse_board("graph 3 2\n0 1\n1 2\n"))
    # edge order is kept so files round-trip byte for byte
    assert digest(Position(path(3))) != digest(parse_board("graph 3 2\n1 2\n0 1\n"))


def test_result_record_json():
    rec = ResultRecord("abc", "maker-breaker", 2, 1, {"left": [0]}, {"left": 5}, {"engine": "canonical"})
    text = rec.to_json()
    assert "timing" not in json.loads(text)
    assert ResultRecord.from_json(text) == rec
    rec.timing = {"seconds": {"left": 0.1}}
    assert ResultRecord.from_json(rec.to_json()) == rec


def test_dot_export():
    p = Position(fig2()).claim(Player.LEFT, 1)
    dot = to_dot(p, highlight=[0])
    assert dot.startswith("graph board {")
    assert "0 [penwidth=3];" in dot and "fillcolor=lightblue" in dot
    hyper = parse_board("hypergraph 3 1\nG 0 1 2\n")
    assert "e0 -- 2" in to_dot(hyper)
