"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--states 40] [--repeat 5]

Both backends run on identical random arenas and their outputs are compared.
"""
import argparse
import timeit

from avgenergy._core import _pykernels
from avgenergy.classic import default_horizon
from avgenergy.families import random_game

try:
    from avgenergy._core import _kernels
except ImportError:
    _kernels = None


def _cases(game):
    off, tgt, wt = game.csr
    bound = game.max_abs_weight
    src = game.index[game.init]
    return {
        "value_iteration": lambda k: k.value_iteration(off, tgt, wt, [1] * game.n, default_horizon(game) // 50),
        "bellman_ford": lambda k: k.bellman_ford(off, tgt, wt, src),
        "karp_min_mean": lambda k: k.karp_min_mean(off, tgt, wt),
        "zero_cycle_forward": lambda k: k.zero_cycle_forward(off, tgt, wt, src, game.n, bound),
    }


def _normalize(result):
    if isinstance(result, tuple):
        return tuple(_normalize(r) for r in result)
    return result.tolist() if hasattr(result, "tolist") else result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=40)
    ap.add_argument("--maxw", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    game = random_game(args.seed, args.states, args.maxw, 0.0, max_out=3)
    print(f"arena: {game.n} states, {len(game.edges)} edges, W={game.max_abs_weight}")
    if _kernels is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<20} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for name, call in _cases(game).items():
        py = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:<20} {py:12.4f} {'-':>12} {'-':>9}")
            continue
        if _normalize(call(_pykernels)) != _normalize(call(_kernels)):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: call(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<20} {py:12.4f} {cy:12.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
