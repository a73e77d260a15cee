"""Ramanujan / graph-theory Riemann hypothesis criteria for regular graphs.

For a (q+1)-regular graph write u = q^(-s). The hypothesis asks that every
pole with 0 < Re s < 1, i.e. 1/q < |u| < 1, sit on Re s = 1/2, i.e.
|u| = 1/sqrt(q). Two independent decisions are returned: one from the
adjacency spectrum, one from the computed pole set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..graphs import Graph
from ..spectra import sym_eigenvalues
from ..tolerances import TOL, Tolerances
from .poles import poles_via_companion


@dataclass(frozen=True)
class GTRHReport:
    q: int
    ramanujan: bool
    pole_based: bool
    worst_eigenvalue: float
    offending_poles: np.ndarray

    @property
    def agree(self) -> bool:
        return self.ramanujan == self.pole_based


def regular_degree(g: Graph) -> int:
    deg = g.degrees
    if g.n == 0 or deg.min() != deg.max():
        raise ValueError("graph is not regular")
    return int(deg[0])


def gtrh_check_regular(g: Graph, tol: Tolerances = TOL) -> GTRHReport:
    d = regular_degree(g)
    q = d - 1
    if q < 1:
        raise ValueError("need (q+1)-regular with q >= 1")
    if not g.is_connected():
        raise ValueError("graph must be connected")

    lam = sym_eigenvalues(g.adjacency).values
    trivial = np.abs(np.abs(lam) - (q + 1)) <= tol.quadratic_dichotomy * (q + 1)
    rest = np.abs(lam[~trivial])
    worst = float(rest.max()) if rest.size else 0.0
    ramanujan = bool(np.all(rest <= 2 * math.sqrt(q) + tol.quadratic_dichotomy * (q + 1)))

    ps = poles_via_companion(g)
    mod = np.abs(ps.all_u())
    t = tol.pole_modulus
    strip = (mod > 1.0 / q + t) & (mod < 1.0 - t)
    off_line = np.abs(mod - 1.0 / math.sqrt(q)) > t
    bad = ps.all_u()[strip & off_line]
    return GTRHReport(q, ramanujan, bool(bad.size == 0), worst, bad)


def quadratic_roots(lam: float, q: float) -> tuple[complex, complex]:
    """Roots of x^2 - lam x + q."""
    disc = complex(lam * lam - 4 * q) ** 0.5
    return (lam + disc) / 2, (lam - disc) / 2


def root_dichotomy(lam: float, q: float, slack: float = TOL.quadratic_dichotomy) -> tuple[bool, bool]:
    """(|lam| <= 2 sqrt q, both roots conjugate of modulus sqrt q), with slack."""
    a, b = quadratic_roots(lam, q)
    within = abs(lam) <= 2 * math.sqrt(q) + slack
    sq = math.sqrt(q)
    # slack on the modulus scales like sqrt(slack) near the double root
    mslack = math.sqrt(slack) * max(1.0, sq)
    on_circle = abs(abs(a) - sq) <= mslack and abs(abs(b) - sq) <= mslack
    conj = abs(a - np.conj(b)) <= mslack
    return within, bool(on_circle and conj)
