"""Time every dispatched kernel under both backends.

    python benchmarks/bench_kernels.py [--repeat 3]

The numba column excludes JIT compilation (one warm-up call first).
"""

import argparse
import time

import numpy as np

from wenger import _accel, graph, jacobi, spectral
from wenger.construct import WengerParams, build_W
from wenger.gf import FieldSpec


def cases():
    w = build_W(WengerParams.create(5, 2))
    big = build_W(WengerParams.create(4, 3))
    n_small = build_W(WengerParams.create(4, 2)).biadjacency().toarray().astype(float)
    n_mid = build_W(WengerParams.create(5, 3)).biadjacency().toarray().astype(float)
    a_small = build_W(WengerParams.create(3, 2)).adjacency_matrix()
    f7 = FieldSpec.create(7)
    f9 = FieldSpec.create(9)
    yield "all-sources BFS  W_2(5)   250 v", lambda: graph.all_sources_bfs(w.indptr, w.indices)
    yield "all-sources BFS  W_3(4)   512 v", lambda: graph.all_sources_bfs(big.indptr, big.indices)
    yield "root census      q=7 m=4", lambda: spectral.root_counts(f7.mul_table, f7.add_table, 7, 4)
    yield "root census      q=9 m=4", lambda: spectral.root_counts(f9.mul_table, f9.add_table, 9, 4)
    yield "Jacobi eig       A of W_2(3)  54x54", lambda: jacobi.jacobi_eigenvalues(a_small)
    yield "Hestenes SVD     N of W_2(4)  64x64", lambda: jacobi.jacobi_singular_values(n_small)
    yield "Hestenes SVD     N of W_3(5)  625x625", lambda: jacobi.jacobi_singular_values(n_mid)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<40} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, fn in cases():
        row = {}
        for backend in ("numba", "numpy"):
            prev = _accel.set_backend(backend)
            try:
                fn()  # warm-up (JIT for numba)
                row[backend] = best_of(fn, args.repeat)
            finally:
                _accel.set_backend(prev)
        speedup = row["numpy"] / row["numba"] if row["numba"] > 0 else np.inf
        print(f"{name:<40} {row['numba']:>10.4f} {row['numpy']:>10.4f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
