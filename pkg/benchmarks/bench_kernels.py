"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is warmed up once (JIT compilation is excluded), then timed on
inputs drawn from real workloads: angulation bitmasks, random exchange
matrices and flip-graph adjacency.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from monosplit import _kernels as K
from monosplit.polygon import enumerate_n_angulations, enumerate_n_diagonals, exchange_graph


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def angulation_masks(d: int, n: int) -> np.ndarray:
    index = {x.pair(): b for b, x in enumerate(enumerate_n_diagonals(d, n))}
    masks = []
    for a in enumerate_n_angulations(d, n):
        m = 0
        for p in a.pairs():
            m |= 1 << index[p]
        masks.append(m)
    return np.array(masks, dtype=np.uint64)


def csr(adj):
    indptr = np.zeros(len(adj) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adj])
    return indptr, np.array([w for a in adj for w in a], dtype=np.int64)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is available")
        return

    masks = angulation_masks(10, 3)
    rng = np.random.default_rng(0)
    up = np.triu(rng.integers(-3, 4, size=(200, 200)), 1)
    B = up - up.T
    indptr, indices = csr(exchange_graph(9, 3).adjacency)

    cases = [
        (f"exchange_pairs ({len(masks)} angulations)",
         lambda: K.exchange_pairs_numpy(masks), lambda: K.exchange_pairs_numba(masks)),
        ("mutate (200x200, 50 steps)",
         lambda: [K.mutate_numpy(B, k % 200) for k in range(50)],
         lambda: [K.mutate_numba(B, k % 200) for k in range(50)]),
        (f"distance_profiles ({len(indptr) - 1} vertices)",
         lambda: K.distance_profiles_numpy(indptr, indices, 16),
         lambda: K.distance_profiles_numba(indptr, indices, 16)),
    ]
    print(f"{'kernel':40s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, np_fn, nb_fn in cases:
        nb_fn()  # compile
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:40s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
