"""Time the compiled minimax kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Both backends solve the same boards with Left and with Right to move; the
values must agree.
"""
import argparse
import time

from incidence import _kernel_py, kernel
from incidence.core import Color, Position
from incidence.generators import complete, cycle, fig2, path

BOARDS = {
    "path-l 12": Position(path(12)),
    "cycle 11": Position(cycle(11)),
    "complete 9 green": Position(complete(9, Color.GREEN)),
    "fig2": Position(fig2()),
}


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    try:
        from incidence import _kernel as compiled
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the pure backend only")
    print(f"{'board':<18}{'pure s':>10}{'compiled s':>12}{'speed-up':>10}")
    for name, p in BOARDS.items():
        args = (p.board.n, *kernel.encode(p))

        def run(impl):
            return [impl.minimax(*args, left, -1)[0] for left in (True, False)]

        tp, vp = best_time(lambda: run(_kernel_py), a.repeat)
        if compiled is None:
            print(f"{name:<18}{tp:>10.3f}{'-':>12}{'-':>10}")
            continue
        tc, vc = best_time(lambda: run(compiled), a.repeat)
        assert vp == vc, (name, vp, vc)
        print(f"{name:<18}{tp:>10.3f}{tc:>12.4f}{tp / tc:>9.0f}x")


if __name__ == "__main__":
    main()
