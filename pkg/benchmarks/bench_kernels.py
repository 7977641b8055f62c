"""Compare the numba and numpy kernels.

    python benchmarks/bench_kernels.py [--k 3] [--repeat 5]

Set TWINWIDTH_NO_NUMBA=1 to see the (slow) interpreted numba path instead.
"""

import argparse
import time

import numpy as np

from twinwidth import kernels
from twinwidth._accel import backend_name
from twinwidth.construction import build_gk
from twinwidth.trigraph import Trigraph
from twinwidth.witness import synthesize_plan


def replay(g: Trigraph, pairs, contract):
    black, red, red_deg = g.black.copy(), g.red.copy(), g.red_deg.copy()
    for keep, remove in pairs:
        contract(black, red, red_deg, keep, remove)
    return red_deg


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--n", type=int, default=60, help="vertices of the random graph for pair scoring")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    g = build_gk(args.k)
    pairs = [tuple(s) for s in synthesize_plan(args.k, g=g).sequence]

    rng = np.random.default_rng(0)
    upper = np.triu(rng.random((args.n, args.n)) < 0.3, 1)
    is_red = rng.random(upper.shape) >= 0.7
    r = Trigraph.from_colored_edges(args.n, np.argwhere(upper & ~is_red), np.argwhere(upper & is_red))
    idx = np.arange(args.n, dtype=np.int64)

    # warm-up (JIT compile) and agreement check
    a = replay(g.graph, pairs[:5], kernels.contract_rows_numba)
    b = replay(g.graph, pairs[:5], kernels.contract_rows_numpy)
    assert np.array_equal(a, b)
    assert np.array_equal(
        kernels.pair_scores_numba(r.black, r.red, r.red_deg, idx), kernels.pair_scores_numpy(r.black, r.red, r.red_deg, idx)
    )

    print(f"active backend: {backend_name()}")
    print(f"witness replay on G_{args.k}: {g.n} vertices, {len(pairs)} contractions")
    rows = []
    for name, fn in [("numba", kernels.contract_rows_numba), ("numpy", kernels.contract_rows_numpy)]:
        rows.append((f"contract {name}", best_of(lambda: replay(g.graph, pairs, fn), args.repeat)))
    for name, fn in [("numba", kernels.pair_scores_numba), ("numpy", kernels.pair_scores_numpy)]:
        rows.append((f"pair_scores {name}", best_of(lambda: fn(r.black, r.red, r.red_deg, idx), args.repeat)))
    for label, t in rows:
        print(f"  {label:<20} {t * 1e3:9.2f} ms")
    print(f"speedup contract {rows[1][1] / rows[0][1]:.1f}x, pair_scores {rows[3][1] / rows[2][1]:.1f}x")


if __name__ == "__main__":
    main()
