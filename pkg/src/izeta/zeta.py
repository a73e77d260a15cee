"""Inverse Ihara zeta function by three independent routes.

* ``inverse_zeta_bass``: (1 - u^2)^(r-1) det(I + u^2 (B - I) - u A), n x n;
* ``inverse_zeta_edge``: det(I - u W) over the 2m directed edges;
* ``log_zeta_series``: truncated sum_k N_k u^k / k with N_k = Tr(W^k).

For disconnected graphs the first expression is taken as the definition; the
edge route is only claimed to agree with it on connected graphs of minimum
degree at least two.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix

from . import kernels
from .errors import DomainError, NumericalError
from .graphs import Graph, count_closed_bt_paths, degree_profile

ROUTES = ("bass_determinant", "edge_determinant", "series")


@dataclass(frozen=True)
class NonBacktrackingMatrix:
    """Sparse 0/1 operator on directed edges, rows/cols ordered by (tail, head)."""

    size: int
    rows: np.ndarray
    cols: np.ndarray
    tails: np.ndarray
    heads: np.ndarray
    edge_index: dict = field(repr=False)

    @cached_property
    def csr(self) -> csr_matrix:
        data = np.ones(self.rows.shape[0], dtype=np.int64)
        return csr_matrix((data, (self.rows, self.cols)), shape=(self.size, self.size))

    def dense(self) -> np.ndarray:
        W = np.zeros((self.size, self.size))
        W[self.rows, self.cols] = 1.0
        return W

    @cached_property
    def spectral_radius(self) -> float:
        if self.size == 0 or self.rows.shape[0] == 0:
            return 0.0
        try:
            mu = np.linalg.eigvals(self.dense())
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigvals(W) failed: {exc}") from exc
        return float(np.max(np.abs(mu)))

    def to_csv(self) -> str:
        """Dense matrix as rows of ``re,im`` pairs (debug export)."""
        W = self.dense()
        return "".join(",".join(f"{x!r},0.0" for x in row) + "\n" for row in W)


@dataclass(frozen=True)
class ZetaEvaluation:
    u: complex
    inverse_value: complex
    route: str


@dataclass(frozen=True)
class SeriesResult:
    """Truncated log-zeta series with its a-priori truncation bound.

    ``|log Z(u) - value| <= bound``, where
    bound = sum_{k>K} 2m (|u| r_W)^k / k <= 2m x^(K+1) / ((K+1)(1-x)), x = |u| r_W.

    ``rounding`` bounds the floating-point error of the partial sum itself;
    past x^K ~ machine epsilon it is the larger of the two.
    """

    value: complex
    bound: float
    K: int
    radius: float
    rounding: float = 0.0

    @property
    def total_bound(self) -> float:
        return self.bound + self.rounding

    @property
    def inverse_zeta(self) -> complex:
        return cmath.exp(-self.value)


def non_backtracking_matrix(g: Graph) -> NonBacktrackingMatrix:
    if g.m < 1:
        raise ValueError("non-backtracking matrix needs at least one edge")
    tails, heads, out_ptr, rev = g.directed
    rows, cols = kernels.nb_triplets(tails, heads, out_ptr, rev)
    index = {(int(t), int(h)): k for k, (t, h) in enumerate(zip(tails, heads))}
    return NonBacktrackingMatrix(2 * g.m, rows, cols, tails, heads, index)


def _det(M: np.ndarray) -> complex:
    """Determinant through LU with partial pivoting, assembled from log|det|."""
    if M.shape[0] == 0:
        return 1.0 + 0.0j
    sign, logabs = np.linalg.slogdet(M)
    if sign == 0:
        return 0j
    with np.errstate(over="ignore"):
        return complex(sign * np.exp(logabs))


def bass_matrix(g: Graph, u: complex) -> np.ndarray:
    A = g.adjacency
    B = np.diag(g.degrees.astype(float))
    return np.eye(g.n) + u * u * (B - np.eye(g.n)) - u * A


def bass_polynomial_det(g: Graph, u: complex) -> complex:
    """det(I + u^2 (B - I) - u A) without the (1 - u^2)^(r-1) prefactor."""
    return _det(bass_matrix(g, complex(u)))


def inverse_zeta_bass(g: Graph, u: complex) -> complex:
    u = complex(u)
    r = degree_profile(g).r
    return (1 - u * u) ** (r - 1) * bass_polynomial_det(g, u)


def inverse_zeta_edge(g: Graph, u: complex) -> complex:
    u = complex(u)
    if g.m == 0:
        return 1.0 + 0.0j
    W = non_backtracking_matrix(g).dense()
    return _det(np.eye(W.shape[0]) - u * W)


def trace_powers(W: NonBacktrackingMatrix, k_max: int) -> list[int]:
    """Exact integers Tr(W^k), k = 1..k_max, by repeated sparse products."""
    S = W.csr
    P = S.copy()
    out = []
    for _ in range(k_max):
        out.append(int(P.diagonal().sum()))
        P = P @ S
    return out


def log_zeta_series(g: Graph, u: complex, K: int, exact: bool = False) -> SeriesResult:
    """Sum_{k=1..K} N_k u^k / k.

    With ``exact=True`` the N_k come from exhaustive path enumeration (small
    graphs only); otherwise N_k u^k = Tr((uW)^k) is accumulated by sparse
    products of the scaled operator, which avoids overflow for large K.
    """
    u = complex(u)
    if K < 1:
        raise ValueError("K must be >= 1")
    if g.m == 0:
        return SeriesResult(0j, 0.0, K, 0.0)
    W = non_backtracking_matrix(g)
    radius = W.spectral_radius
    x = abs(u) * radius
    if x >= 1.0:
        raise DomainError(f"|u| * r_W = {x:.6g} >= 1: series diverges")
    eps = float(np.finfo(float).eps)
    if exact:
        N = count_closed_bt_paths(g, K)
        value = sum(N[k - 1] * u**k / k for k in range(1, K + 1))
        rounding = 2 * K * eps * sum(int(N[k - 1]) * abs(u) ** k / k for k in range(1, K + 1))
    else:
        S = W.csr.astype(complex) * u
        # |fl(P_k) - P_k| <= k (d + 1) eps |S|^k entrywise, d = max row length
        Sa = W.csr.astype(float) * abs(u)
        d = int(np.diff(W.csr.indptr).max())
        P = np.eye(W.size, dtype=complex)
        Pa = np.eye(W.size)
        value = 0j
        walk, terms = 0.0, 0.0
        for k in range(1, K + 1):
            P = S @ P
            Pa = Sa @ Pa
            value += np.trace(P) / k
            t = float(np.trace(Pa))
            walk += t
            terms += t / k
        rounding = eps * ((d + 1) * walk + K * terms)
    m2 = W.size
    bound = m2 * x ** (K + 1) / ((K + 1) * (1.0 - x)) if x > 0 else 0.0
    return SeriesResult(complex(value), float(bound), K, radius, float(rounding))


def evaluate_all(g: Graph, u: complex, K: int = 60) -> list[ZetaEvaluation]:
    """All three routes at one point; the series route is skipped outside its disk."""
    u = complex(u)
    out = [
        ZetaEvaluation(u, inverse_zeta_bass(g, u), "bass_determinant"),
        ZetaEvaluation(u, inverse_zeta_edge(g, u), "edge_determinant"),
    ]
    try:
        s = log_zeta_series(g, u, K)
        out.append(ZetaEvaluation(u, s.inverse_zeta, "series"))
    except DomainError:
        pass
    return out
