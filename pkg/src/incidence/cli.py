"""Command-line interface: ``incidence <command> ...``.

Exit codes: 0 ok, 1 usage, 2 malformed input, 3 search budget exhausted,
4 self-test failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import checks
from .core import BoardError, Color, IllegalMoveError, Player, Position, score_of
from .formulas import (binary_tree_score, es_bounds, mb_claimed_path_score, mb_cycle_score,
                       mb_path_score, mb_union_paths_score, mm_optimal_move, mm_score, potential,
                       potential_greedy_move)
from .generators import generate
from .io import BoardParseError, ResultRecord, digest, parse_board, serialize_board, to_dot
from .kernelizer import KernelInstance, kernelize
from .reductions import (FormulaError, format_qbf, mb_to_mm_universal, parse_qbf, qbf3_to_qmax2sat,
                         qmax2sat_to_incidence)
from .solver import SearchBudgetExceeded, SolveOptions, milnor_equivalent, solve

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET, EXIT_SELFTEST = 0, 1, 2, 3, 4
HINT_NODE_BUDGET = 200_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _player(name: str) -> Player:
    return Player.LEFT if name == "left" else Player.RIGHT


def _options(a) -> SolveOptions:
    return SolveOptions(engine=a.engine, symmetry=not a.no_symmetry, domination=not a.no_domination,
                        twin_reduction=a.twin, alphabeta=a.alphabeta, workers=a.workers, max_nodes=a.max_nodes)


def _emit_dot(text: str, dest: str, out):
    if dest == "-":
        out.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


# commands -------------------------------------------------------------------

def cmd_solve(a, out) -> int:
    p = parse_board(_read(a.board))
    opts = _options(a)
    sides = ["left", "right"] if a.first == "both" else [a.first]
    rec = ResultRecord(digest(p), p.board.convention.value, None, None,
                       options={k: v for k, v in sorted(opts.__dict__.items())})
    timing = {}
    highlight = set()
    for side in sides:
        t = time.perf_counter()
        r = solve(p, _player(side), opts)
        timing[side] = round(time.perf_counter() - t, 6)
        if side == "left":
            rec.ls = r.value
        else:
            rec.rs = r.value
        rec.nodes[side] = r.nodes_expanded
        if a.moves:
            rec.optimal_moves[side] = list(r.optimal_moves)
        highlight.update(r.optimal_moves)
    if a.timing:
        rec.timing = {"seconds": timing}
    if a.dot is not None:
        _emit_dot(to_dot(p, highlight), a.dot, out)
        if a.dot == "-":
            return EXIT_OK
    out.write(rec.to_json())
    return EXIT_OK


_INT_FAMILIES = {
    "path": lambda ns: mb_path_score(ns[0]),
    "claimed-path": lambda ns: mb_claimed_path_score(ns[0]),
    "cycle": lambda ns: mb_cycle_score(ns[0]),
    "binary-tree": lambda ns: binary_tree_score(ns[0]),
    "union-paths": lambda ns: mb_union_paths_score(ns),
}
_BOARD_FAMILIES = ("mm", "es", "potential")


def cmd_formula(a, out) -> int:
    fam = a.family
    if fam in _INT_FAMILIES:
        try:
            ns = [int(x) for x in a.args]
        except ValueError:
            raise UsageError(f"{fam} takes integer parameters") from None
        if not ns or (fam != "union-paths" and len(ns) != 1):
            raise UsageError(f"{fam} takes {'one or more' if fam == 'union-paths' else 'one'} integer parameter")
        ls, rs = _INT_FAMILIES[fam](ns)
        doc = {"family": fam, "params": ns, "ls": ls, "rs": rs}
    else:
        if len(a.args) != 1:
            raise UsageError(f"{fam} takes one board file")
        p = parse_board(_read(a.args[0]))
        doc = {"family": fam, "input_digest": digest(p)}
        if fam == "mm":
            doc["ls"] = mm_score(p.board)
            doc["greedy_move"] = mm_optimal_move(p)
        elif fam == "es":
            lo, hi = es_bounds(p.board)
            doc["ls_lower"] = str(lo)
            doc["rs_upper"] = str(hi)
        else:
            doc["potential"] = str(potential(p))
            if p.free:
                doc["greedy_move"] = potential_greedy_move(p)
    out.write(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_equiv(a, out) -> int:
    g = parse_board(_read(a.first_board))
    h = parse_board(_read(a.second_board))
    same = milnor_equivalent(g, h, max_free=a.max_free)
    out.write("equivalent\n" if same else "not equivalent\n")
    return EXIT_OK


def cmd_kernelize(a, out) -> int:
    p = parse_board(_read(a.board))
    inst = KernelInstance(p, a.k, _player(a.first))
    res, t = kernelize(inst)
    out.write(serialize_board(res.position))
    out.write(f"# k {res.k}\n# first {a.first}\n# transcript\n")
    out.write("".join(f"# {line}\n" for line in t.to_text().splitlines()))
    return EXIT_OK


def cmd_reduce(a, out) -> int:
    if a.kind == "qbf3":
        g, k = qbf3_to_qmax2sat(parse_qbf(_read(a.input)))
        out.write(format_qbf(g))
        out.write(f"c k {k}\n")
    elif a.kind == "qmax2sat":
        if a.k is None:
            raise UsageError("reduce qmax2sat needs --k")
        board, cert = qmax2sat_to_incidence(parse_qbf(_read(a.input)), a.k)
        out.write(serialize_board(Position(board)))
        out.write(f"# first right\n# k' {cert.k_prime}\n# N' {cert.n_prime}\n# m {cert.m}\n")
    else:
        p = parse_board(_read(a.input))
        if p.left or p.right:
            raise BoardError("lift needs an unclaimed board")
        out.write(serialize_board(Position(mb_to_mm_universal(p.board))))
    return EXIT_OK


def cmd_gen(a, out) -> int:
    try:
        params = [int(x) for x in a.params]
    except ValueError:
        raise UsageError("family parameters must be integers") from None
    color = Color(a.color) if a.color else None
    p = Position(generate(a.family, *params, color=color))
    if a.dot is not None:
        _emit_dot(to_dot(p), a.dot, out)
        if a.dot == "-":
            return EXIT_OK
    out.write(serialize_board(p))
    return EXIT_OK


# interactive play -------------------------------------------------------------

def _advice(p: Position, who: Player) -> tuple[int, str]:
    """Best move for ``who``: exact within budget, otherwise potential-greedy."""
    try:
        r = solve(p, who, max_nodes=HINT_NODE_BUDGET)
        return r.optimal_moves[0], f"exact, value {r.value}"
    except SearchBudgetExceeded:
        pass
    if p.board.colors <= {Color.BLUE}:
        return potential_greedy_move(p), "heuristic: potential greedy"
    deg = p.board.degrees
    return max(p.free, key=lambda v: (deg[v], -v)), "heuristic: max degree"


def _status(p: Position) -> str:
    s = f"score {score_of(p.board, p.left, p.right)}"
    if p.board.colors <= {Color.BLUE}:
        s += f", potential {potential(p)}"
    return s


def cmd_play(a, out) -> int:
    p = parse_board(_read(a.board))
    human = _player(a.human)
    turn = _player(a.first)
    history: list[tuple[Position, Player]] = []
    src = sys.stdin

    def say(msg):
        out.write(msg + "\n")
        out.flush()

    say(f"you are {human.value}; commands: <vertex>, undo, hint, quit")
    while p.free:
        if turn is not human:
            v, how = _advice(p, turn)
            history.append((p, turn))
            p = p.claim(turn, v)
            say(f"{turn.value} claims {v} ({how}); {_status(p)}")
            turn = turn.other
            continue
        out.write(f"{turn.value}> ")
        out.flush()
        line = src.readline()
        if not line:
            say("end of input")
            return EXIT_OK
        cmd = line.strip().lower()
        if cmd in ("quit", "q", "exit"):
            return EXIT_OK
        if cmd == "hint":
            v, how = _advice(p, turn)
            say(f"hint: {v} ({how})")
            continue
        if cmd == "undo":
            # back to the previous human turn
            while history:
                p, turn = history.pop()
                if turn is human:
                    break
            say(f"undone; {_status(p)}")
            continue
        try:
            v = int(cmd)
            nxt = p.claim(turn, v)
        except (ValueError, IllegalMoveError):
            say(f"illegal move {cmd!r}; legal moves: {' '.join(map(str, p.free))}")
            continue
        history.append((p, turn))
        p = nxt
        say(f"you claim {v}; {_status(p)}")
        turn = turn.other
    say(f"game over: {_status(p)}")
    return EXIT_OK


def cmd_selftest(a, out) -> int:
    results = checks.run_all(quick=not a.full, echo=lambda s: (out.write(s + "\n"), out.flush()))
    failed = [r for r in results if r.blocking and not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return EXIT_SELFTEST if failed else EXIT_OK


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="incidence", description="Exact tools for scoring positional games on hypergraphs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a board file and print a JSON result record")
    s.add_argument("board", nargs="?", default="-", help="board file, '-' for stdin")
    s.add_argument("--first", choices=["left", "right", "both"], default="both")
    s.add_argument("--moves", action="store_true", help="list every optimal first move")
    s.add_argument("--engine", choices=["canonical", "bitmask"], default="canonical")
    s.add_argument("--twin", action="store_true", help="apply twin reduction after each root move")
    s.add_argument("--alphabeta", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--max-nodes", type=int, default=None)
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--no-domination", action="store_true")
    s.add_argument("--timing", action="store_true", help="add wall-clock times to the record")
    s.add_argument("--dot", nargs="?", const="-", metavar="PATH",
                   help="Graphviz export with optimal moves highlighted; stdout when no path")
    s.set_defaults(fn=cmd_solve)

    f = sub.add_parser("formula", help="closed forms and bounds")
    f.add_argument("--family", required=True, choices=sorted(_INT_FAMILIES) + list(_BOARD_FAMILIES))
    f.add_argument("args", nargs="*", help="integer parameters, or a board file for mm/es/potential")
    f.set_defaults(fn=cmd_formula)

    e = sub.add_parser("equiv", help="test whether two boards are equivalent")
    e.add_argument("first_board")
    e.add_argument("second_board")
    e.add_argument("--max-free", type=int, default=48)
    e.set_defaults(fn=cmd_equiv)

    k = sub.add_parser("kernelize", help="kernel of a Maker-Breaker decision instance")
    k.add_argument("board", nargs="?", default="-")
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--first", choices=["left", "right"], default="left")
    k.set_defaults(fn=cmd_kernelize)

    r = sub.add_parser("reduce", help="hardness constructions")
    r.add_argument("kind", choices=["qbf3", "qmax2sat", "lift"])
    r.add_argument("input", nargs="?", default="-")
    r.add_argument("--k", type=int, default=None)
    r.set_defaults(fn=cmd_reduce)

    g = sub.add_parser("gen", help="emit a board file for a named family")
    g.add_argument("family")
    g.add_argument("params", nargs="*")
    g.add_argument("--color", choices=["B", "R", "G"], default=None)
    g.add_argument("--dot", nargs="?", const="-", metavar="PATH")
    g.set_defaults(fn=cmd_gen)

    p = sub.add_parser("play", help="play against the solver")
    p.add_argument("board")
    p.add_argument("--human", choices=["left", "right"], default="left")
    p.add_argument("--first", choices=["left", "right"], default="left")
    p.set_defaults(fn=cmd_play)

    t = sub.add_parser("selftest", help="run the acceptance checks")
    t.add_argument("--full", action="store_true", help="full sweeps instead of the quick subset")
    t.set_defaults(fn=cmd_selftest)
    return ap


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        return a.fn(a, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (BoardParseError, BoardError, FormulaError, IllegalMoveError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except SearchBudgetExceeded as exc:
        err.write(f"search budget exhausted: {exc}\n")
        return EXIT_BUDGET


def main(argv=None) -> int:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
