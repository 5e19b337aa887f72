"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 20000] [--m 5] [--repeat 3]
"""

import argparse
import sys
import time

import numpy as np

from nhc import kernels
from nhc.generators import HolmeKimParams, holme_kim


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels.compiled is None:
        sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    g = holme_kim(HolmeKimParams(args.n, args.m, 0.5, seed=0))
    nodes, indptr, indices, weights = g.to_csr()
    n = len(nodes)
    sources = np.arange(0, n, 50, dtype=np.int64)
    order = np.random.default_rng(0).permutation(n).astype(np.int64)
    labels = np.arange(n, dtype=np.int64) % 64

    cases = {
        "multi_source_dijkstra": lambda k: k.multi_source_dijkstra(indptr, indices, weights, sources),
        "louvain_move": lambda k: k.louvain_move(indptr, indices, weights, order, np.arange(n, dtype=np.int64)),
        "modularity_csr": lambda k: k.modularity_csr(indptr, indices, weights, labels, 64),
    }
    print(f"graph\tn={n}\tedges={g.edge_count}")
    print("kernel\tpython_s\tcompiled_s\tspeedup")
    for name, call in cases.items():
        py = best_of(lambda: call(kernels.purepy), args.repeat)
        cc = best_of(lambda: call(kernels.compiled), args.repeat)
        print(f"{name}\t{py:.4f}\t{cc:.4f}\t{py / cc:.1f}x")


if __name__ == "__main__":
    main()
