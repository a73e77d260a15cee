"""Hot inner loops.

Each kernel exists in two forms: a numba ``@njit`` loop and a pure-numpy (or
plain Python) fallback. The active form is chosen once at import time:

* ``IZETA_DISABLE_NUMBA=1`` forces the fallback path;
* otherwise numba is used when importable.

Both forms are always importable under explicit names (``*_nb`` / ``*_np``)
so that tests and ``benchmarks/bench_kernels.py`` can compare them directly.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("IZETA_DISABLE_NUMBA", "0").lower() not in (
    "1",
    "true",
    "yes",
)


def _jit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return None


# --------------------------------------------------------------------------
# non-backtracking matrix structure
# --------------------------------------------------------------------------


def _nb_triplets_loop(tails, heads, out_ptr, rev):
    """Rows/cols of W for directed edges sorted by (tail, head).

    out_ptr[v]:out_ptr[v+1] is the block of edges leaving v.
    """
    m2 = tails.shape[0]
    nnz = 0
    for e in range(m2):
        h = heads[e]
        nnz += out_ptr[h + 1] - out_ptr[h] - 1
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    k = 0
    for e in range(m2):
        h = heads[e]
        for f in range(out_ptr[h], out_ptr[h + 1]):
            if f != rev[e]:
                rows[k] = e
                cols[k] = f
                k += 1
    return rows, cols


nb_triplets_nb = _jit(_nb_triplets_loop)


def nb_triplets_np(tails, heads, out_ptr, rev):
    out_deg = np.diff(out_ptr)
    counts = out_deg[heads]
    rows = np.repeat(np.arange(tails.shape[0], dtype=np.int64), counts)
    starts = np.repeat(out_ptr[heads], counts)
    # offset of each entry inside its block
    block_start = np.repeat(np.cumsum(counts) - counts, counts)
    cols = starts + (np.arange(rows.shape[0], dtype=np.int64) - block_start)
    keep = cols != rev[rows]
    return rows[keep].astype(np.int64), cols[keep].astype(np.int64)


# --------------------------------------------------------------------------
# exhaustive closed non-backtracking walk enumeration
# --------------------------------------------------------------------------


def closed_walk_counts_loop(tails, heads, out_ptr, rev, k_max):
    """counts[k] = number of rooted closed backtrackless tailless walks of length k.

    Depth-first over sequences of directed edges; a walk e_1..e_k closes when
    head(e_k) = tail(e_1) and e_1 is not the reversal of e_k.
    """
    m2 = tails.shape[0]
    counts = np.zeros(k_max + 1, dtype=np.int64)
    path = np.empty(k_max + 1, dtype=np.int64)
    nxt = np.empty(k_max + 1, dtype=np.int64)
    for e0 in range(m2):
        start = tails[e0]
        path[1] = e0
        nxt[1] = out_ptr[heads[e0]]
        depth = 1
        # length-1 closure would need a loop edge; simple graphs have none
        while depth >= 1:
            e = path[depth]
            h = heads[e]
            if nxt[depth] < out_ptr[h + 1] and depth < k_max:
                f = nxt[depth]
                nxt[depth] += 1
                if f == rev[e]:
                    continue
                depth += 1
                path[depth] = f
                nxt[depth] = out_ptr[heads[f]]
                if heads[f] == start and rev[f] != e0:
                    counts[depth] += 1
            else:
                depth -= 1
    return counts


closed_walk_counts_nb = _jit(closed_walk_counts_loop)
closed_walk_counts_np = closed_walk_counts_loop


# --------------------------------------------------------------------------
# brute-force grid minimizations used as independent oracles
# --------------------------------------------------------------------------


def _ellipse_grid_loop(a, b, x, n_angles):
    best = math.inf
    best_i = 0
    step = math.pi / (n_angles - 1)
    for i in range(n_angles):
        th = i * step
        ds = a * math.cos(th) - x
        dt = b * math.sin(th)
        d2 = ds * ds + dt * dt
        if d2 < best:
            best = d2
            best_i = i
    return best, best_i * step


ellipse_grid_nb = _jit(_ellipse_grid_loop)


def ellipse_grid_np(a, b, x, n_angles):
    th = np.linspace(0.0, math.pi, n_angles)
    d2 = (a * np.cos(th) - x) ** 2 + (b * np.sin(th)) ** 2
    i = int(np.argmin(d2))
    return float(d2[i]), float(th[i])


def _f_grid_loop(q, tau, lo, hi, n_pts):
    best = math.inf
    best_x = lo
    step = (hi - lo) / (n_pts - 1)
    for i in range(n_pts):
        x = lo + i * step
        if i == n_pts - 1:
            x = hi
        g = x * x * (1.0 - tau) - q * x + 1.0
        v = g * g / (x * x * x)
        if v < best:
            best = v
            best_x = x
    return best, best_x


f_grid_nb = _jit(_f_grid_loop)


def f_grid_np(q, tau, lo, hi, n_pts):
    x = np.linspace(lo, hi, n_pts)
    g = x * x * (1.0 - tau) - q * x + 1.0
    v = g * g / (x * x * x)
    i = int(np.argmin(v))
    return float(v[i]), float(x[i])


if USE_NUMBA:
    nb_triplets = nb_triplets_nb
    closed_walk_counts = closed_walk_counts_nb
    ellipse_grid = ellipse_grid_nb
    f_grid = f_grid_nb
else:
    nb_triplets = nb_triplets_np
    closed_walk_counts = closed_walk_counts_np
    ellipse_grid = ellipse_grid_np
    f_grid = f_grid_np

BACKEND = "numba" if USE_NUMBA else "numpy"
