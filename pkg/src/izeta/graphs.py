"""Undirected simple graphs, deterministic families and seeded Erdos-Renyi samples.

Random streams
--------------
All randomness comes from numpy's Philox4x64-10 counter-based bit generator,
consumed through ``random_raw`` so the stream is independent of numpy's
distribution code. For a seed ``s`` and attempt ``k`` the key is
``s + k * 2**64``; the counter starts at zero. In ``sample_erdos_renyi`` the
pair ``(i, j)``, ``i < j``, enumerated lexicographically with index ``t``,
uses the ``t``-th raw 64-bit word ``w`` and is an edge iff
``(w >> 11) * 2**-53 < rho / n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .errors import BudgetExceededError, GenerationError

SEED_MASK = (1 << 64) - 1

PETERSEN_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
)  # fmt: skip


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` is normalized to a sorted tuple of pairs ``(i, j)`` with ``i < j``.
    Derived matrices are computed lazily and cached; the returned arrays are
    read-only.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            e = (i, j) if i < j else (j, i)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(int(n), tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        arr = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        arr.flags.writeable = False
        return arr

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        if self.m:
            i, j = self.edge_array.T
            A[i, j] = 1.0
            A[j, i] = 1.0
        A.flags.writeable = False
        return A

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        if self.m:
            np.add.at(d, self.edge_array.ravel(), 1)
        d.flags.writeable = False
        return d

    @cached_property
    def directed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(tails, heads, out_ptr, rev) for the 2m directed edges sorted by (tail, head)."""
        e = self.edge_array
        both = np.concatenate([e, e[:, ::-1]]) if self.m else np.zeros((0, 2), np.int64)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        tails = np.ascontiguousarray(both[:, 0])
        heads = np.ascontiguousarray(both[:, 1])
        out_ptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(tails, minlength=self.n), out=out_ptr[1:])
        # reversal of (t, h) is (h, t): locate it inside h's block
        key = tails * max(self.n, 1) + heads
        rkey = heads * max(self.n, 1) + tails
        rev = np.searchsorted(key, rkey).astype(np.int64)
        for arr in (tails, heads, out_ptr, rev):
            arr.flags.writeable = False
        return tails, heads, out_ptr, rev

    def n_components(self) -> int:
        if self.n == 0:
            return 0
        A = csr_matrix(self.adjacency)
        return int(connected_components(A, directed=False)[0])

    def is_connected(self) -> bool:
        return self.n_components() == 1


class DegreeProfile(NamedTuple):
    degrees: list[int]
    min_degree: int
    m: int
    r: int


@dataclass(frozen=True)
class ErdosRenyiSpec:
    n: int
    rho: float
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("Erdos-Renyi sample needs n >= 2")
        if not (0.0 < self.rho < self.n):
            raise ValueError(f"rho must lie in (0, n); got rho={self.rho}, n={self.n}")

    @property
    def p(self) -> float:
        return self.rho / self.n


def philox_words(seed: int, count: int, attempt: int = 0) -> np.ndarray:
    """First ``count`` raw 64-bit words of the stream keyed by (seed, attempt)."""
    key = (int(seed) & SEED_MASK) + (int(attempt) << 64)
    bg = np.random.Philox(key=key)
    return bg.random_raw(count)


def uniforms(seed: int, count: int, attempt: int = 0) -> np.ndarray:
    w = philox_words(seed, count, attempt)
    return (w >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def sample_erdos_renyi(spec: ErdosRenyiSpec, attempt: int = 0) -> Graph:
    """Draw a G(n, rho/n) sample; each of the C(n,2) pairs is tested independently."""
    n = spec.n
    iu, ju = np.triu_indices(n, k=1)
    keep = uniforms(spec.seed, iu.shape[0], attempt) < spec.p
    return Graph(n, tuple(zip(iu[keep].tolist(), ju[keep].tolist())))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def circular_ladder(n: int) -> Graph:
    """Prism C_n x K_2 on 2n vertices: outer cycle 0..n-1, inner cycle n..2n-1."""
    if n < 3:
        raise ValueError("circular ladder needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, tuple(edges))


def petersen_graph() -> Graph:
    return Graph(10, PETERSEN_EDGES)


def random_regular(n: int, d: int, seed: int, max_attempts: int = 10_000) -> Graph:
    """d-regular simple graph from the pairing model, rejecting loops and multi-edges."""
    if d < 0 or d >= n or (n * d) % 2:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    if d == 0:
        return Graph(n, ())
    points = np.repeat(np.arange(n, dtype=np.int64), d)
    rng = np.random.Generator(np.random.Philox(key=int(seed) & SEED_MASK))
    for _ in range(max_attempts):
        perm = rng.permutation(points).reshape(-1, 2)
        a, b = perm[:, 0], perm[:, 1]
        if np.any(a == b):
            continue
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        key = lo * n + hi
        if np.unique(key).shape[0] != key.shape[0]:
            continue
        return Graph(n, tuple(zip(lo.tolist(), hi.tolist())))
    raise GenerationError(f"random_regular({n}, {d}) failed after {max_attempts} attempts")


def degree_profile(g: Graph) -> DegreeProfile:
    deg = g.degrees
    return DegreeProfile(
        degrees=deg.tolist(),
        min_degree=int(deg.min()) if g.n else 0,
        m=g.m,
        r=g.m - g.n + 1,
    )


MAX_ENUM_K = 14
MAX_ENUM_M = 30


def count_closed_bt_paths(g: Graph, k_max: int) -> list[int]:
    """Exhaustive counts N_1..N_k_max of rooted closed backtrackless tailless paths.

    Slow exact oracle; restricted to k_max <= 14 and m <= 30.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if k_max > MAX_ENUM_K or g.m > MAX_ENUM_M:
        raise BudgetExceededError(
            f"enumeration budget is k_max <= {MAX_ENUM_K}, m <= {MAX_ENUM_M}; "
            f"got k_max={k_max}, m={g.m}"
        )
    if g.m == 0:
        return [0] * k_max
    tails, heads, out_ptr, rev = g.directed
    counts = kernels.closed_walk_counts(tails, heads, out_ptr, rev, k_max)
    return [int(c) for c in counts[1:]]


def girth(g: Graph) -> float:
    """Length of the shortest cycle (inf for forests); BFS from every vertex."""
    adj = [[] for _ in range(g.n)]
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for v in queue:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    adj = [[] for _ in range(g.n)]
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty edge-list file")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())
