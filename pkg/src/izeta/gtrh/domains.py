"""Regions of the v-plane where normalized-zeta poles should be absent, and their schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..tolerances import TOL
from .poles import PoleSet

KINDS = ("D1", "D2", "I1", "I2")


def eps_schedule(chi: float) -> float:
    return 2.0 / chi ** (1.0 / 8.0)


def eps_prime_schedule(rho: float, kappa: float) -> float:
    return 1.0 / (math.sqrt(rho) * (1.0 - kappa))


def eps_hat_schedule(chi: float, h_hat: float) -> float:
    return h_hat / chi ** (1.0 / 4.0)


def delta_schedule(chi: float) -> float:
    return chi ** (-3.0 / 8.0)


@dataclass(frozen=True)
class DomainSpec:
    """One of the annuli D1 = {eps' < |v| < 1 - eps}, D2 = {1 + eps < |v| < 1/eps'},
    or the real intervals I1 = (eps', 1 - eps_hat), I2 = (1 + eps_hat, 1/eps')."""

    kind: str
    eps: float
    eps_prime: float
    eps_hat: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not self.eps_prime > 0:
            raise ValueError("eps' must be positive")
        if self.kind in ("I1", "I2") and self.eps_hat is None:
            raise ValueError("real-interval domains need eps_hat")

    @property
    def bounds(self) -> tuple[float, float]:
        w = self.eps_hat if self.kind in ("I1", "I2") else self.eps
        if self.kind in ("D1", "I1"):
            return self.eps_prime, 1.0 - w
        return 1.0 + w, 1.0 / self.eps_prime

    @property
    def empty(self) -> bool:
        lo, hi = self.bounds
        return not lo < hi

    def contains(self, v: np.ndarray, realness: float = TOL.realness) -> np.ndarray:
        """Strict-interior membership mask for an array of v values."""
        v = np.asarray(v, dtype=complex)
        lo, hi = self.bounds
        if self.kind in ("D1", "D2"):
            x = np.abs(v)
            return (lo < x) & (x < hi)
        real = np.abs(v.imag) <= realness * np.maximum(1.0, np.abs(v))
        x = v.real
        return real & (lo < x) & (x < hi)

    def near_boundary(self, v: np.ndarray, tol: float = TOL.near_boundary) -> int:
        v = np.asarray(v, dtype=complex)
        x = np.abs(v) if self.kind in ("D1", "D2") else v.real
        lo, hi = self.bounds
        return int(np.count_nonzero((np.abs(x - lo) <= tol) | (np.abs(x - hi) <= tol)))


def domains_for(chi: float, rho: float, kappa: float, h_hat: float) -> dict[str, DomainSpec]:
    """The four regions at one point of the (n, chi) schedule."""
    eps = eps_schedule(chi)
    epsp = eps_prime_schedule(rho, kappa)
    eh = eps_hat_schedule(chi, h_hat)
    return {k: DomainSpec(k, eps, epsp, eh, kappa) for k in KINDS}


def domain_event(ps: PoleSet, d: DomainSpec) -> bool:
    """True iff some v-pole (unit poles included) lies strictly inside ``d``."""
    if d.empty:
        return False
    v = ps.all_v()
    if v.size == 0:
        return False
    return bool(np.any(d.contains(v)))
