"""Numba kernels vs the numpy fallback, and where a campaign trial actually spends time.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The kernel timings exclude JIT compilation (one warm-up call first).
The last block times one full trial at n=400 so the kernel share can be
compared against the dense eigensolves.
"""

import argparse
import math
import time

import numpy as np
import scipy.linalg as sla

from izeta import kernels
from izeta.graphs import ErdosRenyiSpec, petersen_graph, sample_erdos_renyi
from izeta.gtrh.montecarlo import run_trial
from izeta.gtrh.poles import companion_matrix


def best_of(fn, repeat):
    fn()
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args(argv)

    g = sample_erdos_renyi(ErdosRenyiSpec(400, math.log(400) ** 2, 7))
    d = g.directed
    dp = petersen_graph().directed
    cases = [
        ("nb_triplets (n=400)", lambda k: lambda: k(*d), kernels.nb_triplets_np, getattr(kernels, "nb_triplets_nb", None)),
        ("closed_walk_counts (P, K=10)", lambda k: lambda: k(*dp, 10), kernels.closed_walk_counts_np, getattr(kernels, "closed_walk_counts_nb", None)),
        ("ellipse_grid (1e6)", lambda k: lambda: k(3.0, 1.0, 2.0, 1_000_000), kernels.ellipse_grid_np, getattr(kernels, "ellipse_grid_nb", None)),
        ("f_grid (1e6)", lambda k: lambda: k(5.0, 0.01, 1.1, 20.0, 1_000_000), kernels.f_grid_np, getattr(kernels, "f_grid_nb", None)),
    ]  # fmt: skip
    print(f"numba available: {kernels.HAVE_NUMBA}, active backend: {kernels.BACKEND}")
    print(f"{'kernel':28s} {'numpy [s]':>11s} {'numba [s]':>11s} {'speedup':>8s}")
    for name, bind, k_np, k_nb in cases:
        t_np = best_of(bind(k_np), a.repeat)
        if k_nb is None:
            print(f"{name:28s} {t_np:11.4f} {'-':>11s} {'-':>8s}")
            continue
        t_nb = best_of(bind(k_nb), a.repeat)
        print(f"{name:28s} {t_np:11.4f} {t_nb:11.4f} {t_np / t_nb:8.1f}")

    print()
    C = companion_matrix(g)
    A = np.asarray(g.adjacency, dtype=float)
    t_eig = best_of(lambda: sla.eigvals(C), a.repeat)
    t_eigh = best_of(lambda: sla.eigvalsh(A), a.repeat)
    t_trial = best_of(lambda: run_trial(ErdosRenyiSpec(400, math.log(400) ** 2, 7)), a.repeat)
    print(f"companion eig (2n={C.shape[0]})      {t_eig:8.3f} s")
    print(f"adjacency eigvalsh (n={A.shape[0]})   {t_eigh:8.3f} s")
    print(f"full trial at n=400            {t_trial:8.3f} s")
    print(f"eig share of a trial           {100 * min(1.0, t_eig / t_trial):7.1f} %")


if __name__ == "__main__":
    main()
