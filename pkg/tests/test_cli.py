import io
import json
import subprocess
import sys

import pytest

from incidence.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run_command


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        code = run_command(argv, out, err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def gen(*args):
    code, out, _ = run(["gen", *args])
    assert code == EXIT_OK
    return out


def test_solve_path():
    code, out, _ = run(["solve", "--first", "left", "-"], gen("path-l", "8"))
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["ls"] == 2 and rec["rs"] is None and rec["convention"] == "maker-breaker"


def test_solve_moves():
    code, out, _ = run(["solve", "--first", "both", "--moves"], gen("fig2"))
    rec = json.loads(out)
    assert rec["optimal_moves"] == {"left": [0], "right": [2]}
    assert (rec["ls"], rec["rs"]) == (4, 2)


@pytest.mark.parametrize("flags", [["--engine", "bitmask"], ["--alphabeta"], ["--twin"], ["--workers", "2"],
                                   ["--no-symmetry", "--no-domination"]])
def test_solve_flags(flags):
    code, out, _ = run(["solve", *flags], gen("binary-tree", "2"))
    assert code == EXIT_OK
    rec = json.loads(out)
    assert (rec["ls"], rec["rs"]) == (2, 1)


def test_solve_is_deterministic():
    board = gen("cycle", "7")
    a = run(["solve", "--moves"], board)[1]
    b = run(["solve", "--moves"], board)[1]
    assert a == b
    timed = json.loads(run(["solve", "--timing"], board)[1])
    assert set(timed["timing"]["seconds"]) == {"left", "right"}
    del timed["timing"]
    assert timed == json.loads(run(["solve"], board)[1])


def test_solve_dot(tmp_path):
    code, out, _ = run(["solve", "--dot"], gen("fig2"))
    assert code == EXIT_OK and out.startswith("graph board {") and "0 [penwidth=3]" in out
    dest = tmp_path / "b.dot"
    code, out, _ = run(["solve", "--dot", str(dest)], gen("path-l", "3"))
    assert json.loads(out)["ls"] == 1 and dest.read_text().startswith("graph board")


def test_equiv(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    a.write_text(gen("path-l", "4"))
    b.write_text(gen("path-l", "3"))
    c.write_text(gen("path-l", "2"))
    assert run(["equiv", str(a), str(b)])[1] == "equivalent\n"
    assert run(["equiv", str(a), str(c)])[1] == "not equivalent\n"


def test_formula():
    code, out, _ = run(["formula", "--family", "path", "8"])
    assert json.loads(out) == {"family": "path", "params": [8], "ls": 2, "rs": 1}
    assert json.loads(run(["formula", "--family", "union-paths", "5", "5", "3"])[1])["ls"] == 2
    assert json.loads(run(["formula", "--family", "cycle", "9"])[1])["rs"] == 2
    assert json.loads(run(["formula", "--family", "mm", "-"], gen("fig1"))[1])["ls"] == 2
    es = json.loads(run(["formula", "--family", "es", "-"], gen("complete", "8"))[1])
    assert (es["ls_lower"], es["rs_upper"]) == ("6", "7")
    pot = json.loads(run(["formula", "--family", "potential", "-"], gen("path-l", "3"))[1])
    assert pot == {"family": "potential", "greedy_move": 1, "input_digest": pot["input_digest"], "potential": "1/2"}
    assert run(["formula", "--family", "path"])[0] == EXIT_USAGE
    assert run(["formula", "--family", "path", "x"])[0] == EXIT_USAGE


def test_kernelize():
    code, out, _ = run(["kernelize", "--k", "30", "--first", "left"], gen("fig5"))
    assert code == EXIT_OK
    assert "# k 13" in out and "# step3 1 1 1" in out and "# step4 u 7" in out
    board = out.split("# k")[0]
    assert board.startswith("graph 11 ")


def test_reduce():
    code, out, _ = run(["reduce", "qbf3"], "e1 a2 e3\n1 2 3 0\n")
    assert code == EXIT_OK and out.rstrip().endswith("c k 7")
    code, out, _ = run(["reduce", "qmax2sat", "--k", "1"], "e1 a2\n1 2 0\n")
    assert code == EXIT_OK and "# k' " in out
    assert run(["reduce", "qmax2sat"], "e1 a2\n1 2 0\n")[0] == EXIT_USAGE
    code, out, _ = run(["reduce", "lift"], gen("path-l", "3"))
    assert out.startswith("hypergraph 4 2\nG 0 1 3\n")
    assert run(["reduce", "qbf3"], "e1\n1 2 0\n")[0] == EXIT_PARSE


def test_gen():
    assert gen("path-l", "3") == "graph 3 2\n0 1\n1 2\n"
    assert gen("cycle", "3", "--color", "G").startswith("hypergraph 3 3\nG 0 1\n")
    assert gen("star", "2", "--dot").startswith("graph board {")
    assert run(["gen", "nope"])[0] == EXIT_PARSE
    assert run(["gen", "path-l", "x"])[0] == EXIT_USAGE


def test_exit_codes(tmp_path):
    assert run(["solve"], "hypergraph 2 1\nG 0 1 5\n")[0] == EXIT_PARSE
    assert run(["bogus"])[0] == EXIT_USAGE
    assert run(["solve", str(tmp_path / "missing")])[0] == EXIT_USAGE
    code, _, err = run(["solve", "--no-symmetry", "--no-domination", "--max-nodes", "3"], gen("path-l", "9"))
    assert code == EXIT_BUDGET and "budget" in err


def test_play_session(tmp_path):
    board = tmp_path / "p5"
    board.write_text(gen("path-l", "5"))
    code, out, _ = run(["play", str(board)], "foo\n7\nhint\n1\nundo\n2\n0\n4\n")
    assert code == EXIT_OK
    assert "illegal move 'foo'; legal moves: 0 1 2 3 4" in out
    assert "illegal move '7'" in out
    assert "hint: 0 (exact, value 1)" in out
    assert "undone" in out
    assert "game over" in out


def test_play_quits_and_eof(tmp_path):
    board = tmp_path / "p3"
    board.write_text(gen("path-l", "3"))
    assert run(["play", str(board), "--human", "right"], "quit\n")[0] == EXIT_OK
    code, out, _ = run(["play", str(board)], "")
    assert code == EXIT_OK and "end of input" in out


def test_selftest_quick():
    code, out, _ = run(["selftest"])
    assert code == EXIT_OK
    assert out.count("[PASS]") == 11 and "[REPORT]" in out


def test_console_script():
    gen_out = subprocess.run([sys.executable, "-m", "incidence", "gen", "path-l", "8"],
                             capture_output=True, text=True, check=True).stdout
    solved = subprocess.run([sys.executable, "-m", "incidence", "solve", "--first", "left"], input=gen_out,
                            capture_output=True, text=True, check=True).stdout
    assert json.loads(solved)["ls"] == 2
