"""Zeta poles from the companion linearization and from the non-backtracking matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import linear_sum_assignment

from ..errors import SingularPencilError
from ..graphs import Graph, degree_profile
from ..spectra import nonsym_eigenvalues
from ..tolerances import TOL, Tolerances
from ..zeta import non_backtracking_matrix


@dataclass(frozen=True)
class PoleSet:
    """Poles of the zeta function of one graph.

    ``poles_u`` excludes the +-1 poles coming from the (1 - u^2)^(r-1)
    prefactor; those are kept as ``unit_multiplicity`` (companion route only;
    the W route sees them as ordinary eigenvalues). ``rho`` attaches the
    normalization v = u sqrt(rho).
    """

    poles_u: np.ndarray
    unit_multiplicity: int
    route: str
    rho: float | None = None
    infinite_count: int = 0

    @property
    def scale(self) -> float:
        return math.sqrt(self.rho) if self.rho is not None else 1.0

    @property
    def poles_v(self) -> np.ndarray:
        if self.rho is None:
            raise ValueError("no rho attached; call normalized_pole_set")
        return self.poles_u * self.scale

    @property
    def unit_poles_u(self) -> np.ndarray:
        k = max(self.unit_multiplicity, 0)
        return np.array([1.0 + 0j] * k + [-1.0 + 0j] * k)

    @property
    def unit_poles_v(self) -> np.ndarray:
        return self.unit_poles_u * self.scale

    def all_u(self) -> np.ndarray:
        return np.concatenate([self.poles_u, self.unit_poles_u])

    def all_v(self) -> np.ndarray:
        return np.concatenate([self.poles_v, self.unit_poles_v])

    def conjugate_closed(self, tol: float = TOL.pairing) -> bool:
        return multisets_match(self.poles_u, np.conj(self.poles_u), tol)

    def with_rho(self, rho: float) -> "PoleSet":
        if not rho > 0:
            raise ValueError("rho must be positive")
        return replace(self, rho=float(rho))


def companion_matrix(g: Graph) -> np.ndarray:
    """[[0, I], [-(B - I)^-1, (B - I)^-1 A]]; eigenvalues are the roots of
    det(I + u^2 (B - I) - u A)."""
    deg = g.degrees
    if g.n == 0:
        return np.zeros((0, 0))
    if deg.min() < 2:
        bad = int(np.argmin(deg))
        raise SingularPencilError(
            f"vertex {bad} has degree {int(deg[bad])} < 2, so B - I is singular; "
            "use poles_via_W instead"
        )
    n = g.n
    dinv = 1.0 / (deg - 1.0)
    C = np.zeros((2 * n, 2 * n))
    C[:n, n:] = np.eye(n)
    C[n:, :n] = -np.diag(dinv)
    C[n:, n:] = dinv[:, None] * g.adjacency
    return C


def merge_root_clusters(z, rel: float = TOL.root_cluster) -> np.ndarray:
    """Replace each tight cluster of computed roots by its centroid.

    A defective root of multiplicity k comes back from the eigensolver split
    into k points around it at distance ~eps^(1/k); their mean is accurate to
    O(eps). Clusters are single-linkage at distance rel * max(1, |z|).
    """
    z = np.asarray(z, dtype=complex)
    if z.size < 2 or rel <= 0:
        return z.copy()
    scale = max(1.0, float(np.max(np.abs(z))))
    pts = np.column_stack([z.real, z.imag])
    labels = fcluster(linkage(pts, method="single"), t=rel * scale, criterion="distance")
    out = z.copy()
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        if idx.size > 1:
            out[idx] = z[idx].mean()
    return out


def poles_via_companion(g: Graph, tol: Tolerances = TOL) -> PoleSet:
    mu = merge_root_clusters(nonsym_eigenvalues(companion_matrix(g)).values, tol.root_cluster)
    r = degree_profile(g).r
    return PoleSet(np.sort_complex(mu), r - 1, "companion")


def poles_via_W(g: Graph, tol: Tolerances = TOL) -> PoleSet:
    """u = 1/mu for the nonzero eigenvalues mu of W.

    Zero eigenvalues (possibly defective, from tree-like parts) are thresholded
    at ``tol.w_zero_threshold``: every nonzero eigenvalue of W has modulus >= 1.
    """
    if g.m < 1:
        raise ValueError("poles_via_W needs at least one edge")
    mu = w_eigenvalues(g, tol, merge=False)
    zero = np.abs(mu) < tol.w_zero_threshold
    mu = mu.copy()
    mu[~zero] = merge_root_clusters(mu[~zero], tol.root_cluster)
    u = 1.0 / mu[~zero]
    return PoleSet(np.sort_complex(u), 0, "edge", infinite_count=int(zero.sum()))


def w_eigenvalues(g: Graph, tol: Tolerances = TOL, merge: bool = True) -> np.ndarray:
    """Eigenvalues of the dense non-backtracking matrix, tight clusters averaged."""
    W = non_backtracking_matrix(g).dense()
    mu = nonsym_eigenvalues(W).values
    return merge_root_clusters(mu, tol.root_cluster) if merge else mu


def poles_auto(g: Graph) -> PoleSet:
    if g.n and g.degrees.min() >= 2:
        return poles_via_companion(g)
    return poles_via_W(g)


def normalized_pole_set(g: Graph, rho: float, route: str = "auto") -> PoleSet:
    if not rho > 0:
        raise ValueError("rho must be positive")
    if route == "auto":
        ps = poles_auto(g)
    elif route == "companion":
        ps = poles_via_companion(g)
    elif route in ("edge", "W"):
        ps = poles_via_W(g)
    else:
        raise ValueError(f"unknown route {route!r}")
    return ps.with_rho(rho)


def multisets_match(a, b, tol: float) -> bool:
    """Optimal one-to-one pairing of two complex multisets, each pair within
    ``tol * max(1, |z|)``."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    D = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(D)
    return bool(np.all(D[r, c] <= tol * np.maximum(1.0, np.abs(a[r]))))


def ihara_bass_expected_w_spectrum(g: Graph, tol: Tolerances = TOL) -> np.ndarray:
    """{1/u : companion roots} together with +1 and -1, each m - n times."""
    ps = poles_via_companion(g, tol)
    k = g.m - g.n
    return np.concatenate([1.0 / ps.poles_u, np.ones(k), -np.ones(k)]).astype(complex)
