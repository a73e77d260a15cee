"""Spectra of the normalized matrices around H(v) = A~ - gamma(v) I - v B^.

Thin contracts over LAPACK (numpy/scipy); nothing here is hand-rolled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NumericalError
from .graphs import Graph
from .tolerances import TOL, Tolerances


@dataclass(frozen=True)
class SpectralSummary:
    """Eigenvalues, descending for symmetric input; complex for general input."""

    values: np.ndarray
    symmetric: bool

    def __len__(self):
        return self.values.shape[0]


def _as_square(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def sym_eigenvalues(M, tol: Tolerances = TOL) -> SpectralSummary:
    M = _as_square(M)
    scale = max(float(np.max(np.abs(M))) if M.size else 0.0, 1.0)
    if M.size and np.max(np.abs(M - M.T)) > tol.symmetry_rel * scale:
        raise ValueError("matrix is not symmetric")
    try:
        lam = np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigvalsh failed: {exc}") from exc
    return SpectralSummary(lam[::-1].copy(), True)


def nonsym_eigenvalues(M) -> SpectralSummary:
    M = _as_square(M)
    try:
        mu = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Schur iteration did not converge: {exc}") from exc
    return SpectralSummary(mu.astype(complex), False)


def singular_values(M) -> np.ndarray:
    """Ascending singular values."""
    M = np.asarray(M)
    try:
        s = np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"svd failed: {exc}") from exc
    return s[::-1].copy()


def operator_norm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False)[0])


def gamma(v: complex, tau: float) -> complex:
    """Shifted Joukowski map v (1 - tau) + 1/v."""
    v = complex(v)
    if v == 0:
        raise ValueError("gamma is undefined at v = 0")
    return v * (1.0 - tau) + 1.0 / v


@dataclass(frozen=True)
class NormalizedMatrices:
    """A~ = A/sqrt(rho), the centered A(breve), B~ = B/rho, B^ = B~ - (n-1)/n I."""

    graph: Graph
    rho: float

    def __post_init__(self):
        if not (self.rho > 0):
            raise ValueError("rho must be positive")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def degenerate(self) -> bool:
        """rho at or beyond the ends of (0, n): allowed, but the model is degenerate."""
        return not (0 < self.rho < self.n)

    @cached_property
    def A_tilde(self) -> np.ndarray:
        return self.graph.adjacency / math.sqrt(self.rho)

    @cached_property
    def A_breve(self) -> np.ndarray:
        Ab = (self.graph.adjacency - self.rho / self.n) / math.sqrt(self.rho)
        np.fill_diagonal(Ab, 0.0)
        return Ab

    @cached_property
    def A_rank_one(self) -> np.ndarray:
        """A~ - t J with t = sqrt(rho)/n (the rank-one shift, diagonal included)."""
        t = math.sqrt(self.rho) / self.n
        return self.A_tilde - t

    @cached_property
    def B_tilde(self) -> np.ndarray:
        return self.graph.degrees.astype(float) / self.rho

    @cached_property
    def B_hat(self) -> np.ndarray:
        """Diagonal of B^ as a vector."""
        return self.B_tilde - (self.n - 1) / self.n

    @cached_property
    def delta_max(self) -> float:
        return float(np.max(np.abs(self.B_hat))) if self.n else 0.0

    @property
    def tau(self) -> float:
        return 1.0 / self.n + 1.0 / self.rho

    @cached_property
    def lambda_tilde(self) -> np.ndarray:
        return sym_eigenvalues(self.A_tilde).values

    @cached_property
    def lambda_breve(self) -> np.ndarray:
        return sym_eigenvalues(self.A_breve).values

    def gamma(self, v: complex) -> complex:
        return gamma(v, self.tau)


def build_H(nm: NormalizedMatrices, v: complex) -> np.ndarray:
    v = complex(v)
    if v == 0:
        raise ValueError("H(v) is undefined at v = 0")
    H = nm.A_tilde.astype(complex)
    H[np.diag_indices(nm.n)] -= nm.gamma(v) + v * nm.B_hat
    return H


def neg_v_H_rhs(nm: NormalizedMatrices, v: complex) -> np.ndarray:
    """I + (v^2/rho)(B - I) - (v/sqrt(rho)) A, the right side of -v H(v)."""
    v = complex(v)
    g = nm.graph
    n = g.n
    M = -(v / math.sqrt(nm.rho)) * g.adjacency.astype(complex)
    M[np.diag_indices(n)] += 1.0 + (v * v / nm.rho) * (g.degrees - 1.0)
    return M


@dataclass(frozen=True)
class GapBound:
    """Observed perturbation gap and the bound it is claimed to respect."""

    gap: float
    bound: float
    scale: float

    def holds(self, rel: float = TOL.inequality_rel) -> bool:
        return self.gap <= self.bound + rel * max(self.scale, 1.0)


def weyl_singular_gap(X, Y) -> GapBound:
    """max_i |s_i(X + Y) - s_i(X)| against ||Y||."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    s_xy = singular_values(X + Y)
    s_x = singular_values(X)
    gap = float(np.max(np.abs(s_xy - s_x))) if s_x.size else 0.0
    return GapBound(gap, operator_norm(Y), max(operator_norm(X), operator_norm(X + Y)))


def weyl_H_singular(nm: NormalizedMatrices, v: complex) -> GapBound:
    """Singular-value form: X = A~ - gamma I, Y = -v B^; bound is |v| Delta_max."""
    v = complex(v)
    X = nm.A_tilde - nm.gamma(v) * np.eye(nm.n)
    Y = np.diag(-v * nm.B_hat)
    res = weyl_singular_gap(X, Y)
    return GapBound(res.gap, abs(v) * nm.delta_max, res.scale)


def weyl_eigen_gap_real_v(nm: NormalizedMatrices, v: float) -> GapBound:
    """Hermitian Weyl: max_i |l_i(H(v)) - l_i(A~ - gamma(v) I)| vs |v| Delta_max."""
    if isinstance(v, complex):
        if v.imag != 0:
            raise ValueError("v must be real")
        v = v.real
    v = float(v)
    if v == 0:
        raise ValueError("v must be nonzero")
    gam = nm.gamma(v).real
    H = nm.A_tilde.copy()
    H[np.diag_indices(nm.n)] -= gam + v * nm.B_hat
    lam_H = sym_eigenvalues(H).values
    lam_0 = nm.lambda_tilde - gam
    gap = float(np.max(np.abs(lam_H - lam_0)))
    scale = max(abs(lam_H[0]), abs(lam_H[-1]), abs(lam_0[0]), abs(lam_0[-1]))
    return GapBound(gap, abs(v) * nm.delta_max, scale)


@dataclass(frozen=True)
class InterlacingResult:
    upper: bool  # l_1(A_c) >= l_2(A~)
    lower: bool  # l_n(A~) >= l_n(A_c)
    upper_margin: float
    lower_margin: float
    variant: str
    degenerate: bool = False

    @property
    def both(self) -> bool:
        return self.upper and self.lower


def interlacing_check(
    g: Graph, rho: float, variant: str = "centered", tol: Tolerances = TOL
) -> InterlacingResult:
    """Compare the extreme eigenvalues of A~ with those of its mean-shifted version.

    ``variant="centered"`` uses the zero-diagonal centered matrix A(breve);
    ``variant="rank_one"`` uses A~ - t J verbatim (t = sqrt(rho)/n).
    """
    if not (0 < rho <= g.n):
        raise ValueError("rho must lie in (0, n]")
    nm = NormalizedMatrices(g, rho)
    if variant == "centered":
        lam_c = nm.lambda_breve
    elif variant == "rank_one":
        lam_c = sym_eigenvalues(nm.A_rank_one).values
    else:
        raise ValueError(f"unknown variant {variant!r}")
    lam = nm.lambda_tilde
    slack = tol.inequality_rel * max(abs(lam[0]), abs(lam[-1]), 1e-300)
    if g.n < 2:
        return InterlacingResult(True, True, math.inf, math.inf, variant, nm.degenerate)
    up = float(lam_c[0] - lam[1])
    low = float(lam[-1] - lam_c[-1])
    return InterlacingResult(up >= -slack, low >= -slack, up, low, variant, nm.degenerate)
