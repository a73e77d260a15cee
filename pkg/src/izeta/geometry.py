"""Ellipse distances and the one-dimensional minimizations behind the pole bounds.

The objective throughout is

    f(x) = (x^2 (1 - tau) - q x + 1)^2 / x^3 = |gamma(x) - q|^2 / x,

with gamma(x) = x (1 - tau) + 1/x. Writing g(x) = x^2 (1 - tau) - q x + 1,
f'(x) = g(x) (x^2 (1 - tau) + q x - 3) / x^4, so the stationary points are
the roots x1 < x2 of g and the positive root x4 of the second factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .spectra import gamma

GRID_POINTS = 1_000_000


# --------------------------------------------------------------------------
# ellipse distance
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Ellipse:
    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.b < self.a):
            raise ValueError(f"need 0 < b < a, got a={self.a}, b={self.b}")

    @property
    def x0(self) -> float:
        """Where the nearest point leaves the upper arc for the vertex (a, 0)."""
        return self.a * (1.0 - self.b**2 / self.a**2)

    def contains_point(self, w: complex, tol: float) -> bool:
        return abs((w.real / self.a) ** 2 + (w.imag / self.b) ** 2 - 1.0) <= tol


def ellipse_distance_sq(e: Ellipse, x: float) -> float:
    if not (0.0 <= x <= e.a):
        raise ValueError(f"x={x} outside [0, a={e.a}]")
    if x <= e.x0:
        return e.b**2 * (1.0 - x * x / (e.a**2 - e.b**2))
    return (e.a - x) ** 2


def ellipse_distance(e: Ellipse, x: float) -> float:
    """Distance from (x, 0) to the ellipse (s/a)^2 + (t/b)^2 = 1, for 0 <= x <= a."""
    return math.sqrt(max(ellipse_distance_sq(e, x), 0.0))


def ellipse_distance_bruteforce(e: Ellipse, x: float, n_angles: int = GRID_POINTS) -> float:
    """Independent oracle: angular grid on the upper half, then bounded Brent refinement."""
    d2, th = kernels.ellipse_grid(e.a, e.b, float(x), n_angles)
    h = math.pi / (n_angles - 1)
    lo, hi = max(0.0, th - h), min(math.pi, th + h)

    def obj(t):
        return (e.a * math.cos(t) - x) ** 2 + (e.b * math.sin(t)) ** 2

    res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
    return math.sqrt(max(min(d2, float(res.fun), obj(lo), obj(hi)), 0.0))


class DegenerateEllipseError(ValueError):
    pass


def gamma_ellipse(r: float, tau: float) -> Ellipse:
    """Image of the circle |v| = r under gamma: half-axes r(1-tau) + 1/r and |r(1-tau) - 1/r|."""
    if not r > 0:
        raise ValueError("r must be positive")
    a = r * (1.0 - tau) + 1.0 / r
    b = abs(r * (1.0 - tau) - 1.0 / r)
    if b == 0.0 or b < 1e-14 * a:
        raise DegenerateEllipseError(
            f"r(1-tau) = 1/r at r={r}, tau={tau}: the ellipse collapses to a segment"
        )
    return Ellipse(a, b)


def min_distance_to_gamma_circle_sq(r: float, tau: float, lam_max: float, n_angles: int = GRID_POINTS) -> float:
    """Grid oracle for min over lam in [0, lam_max], phi of |lam - gamma(r e^{i phi})|^2.

    For fixed phi the inner minimum over lam is attained at the clipped real part.
    """
    phi = np.linspace(0.0, math.pi, n_angles)
    w = r * (1.0 - tau) * np.exp(1j * phi) + np.exp(-1j * phi) / r
    s = np.clip(w.real, 0.0, lam_max)
    return float(np.min((w.real - s) ** 2 + w.imag**2))


def gamma_circle_gap_sq(r: float, tau: float, delta: float) -> float:
    """(r(1-tau) + 1/r - 2 - delta)^2: squared gap between [0, 2 + delta] and the
    gamma-image of |v| = r, valid when x0 < 2 + delta <= the major half-axis."""
    return (r * (1.0 - tau) + 1.0 / r - 2.0 - delta) ** 2


# --------------------------------------------------------------------------
# minimization of f over the outer and inner intervals
# --------------------------------------------------------------------------


def f_value(x: float, q: float, tau: float) -> float:
    g = x * x * (1.0 - tau) - q * x + 1.0
    return g * g / x**3


def stationary_points(q: float, tau: float) -> dict[str, float | None]:
    """x1 <= x2 (roots of g, None if complex), x3 < 0 < x4."""
    c = 1.0 - tau
    disc = q * q - 4.0 * c
    x1 = x2 = None
    if disc >= 0:
        s = math.sqrt(disc)
        x1 = (q - s) / (2 * c)
        x2 = (q + s) / (2 * c)
    s34 = math.sqrt(q * q + 12.0 * c)
    return {"x1": x1, "x2": x2, "x3": (-q - s34) / (2 * c), "x4": (-q + s34) / (2 * c)}


@dataclass(frozen=True)
class MinimizationParams:
    q: float
    eps: float
    eps_prime: float
    tau: float
    kind: str  # "outer": (1 + eps, 1/eps'), "inner": (eps', 1 - eps)

    def __post_init__(self):
        if self.kind not in ("outer", "inner"):
            raise ValueError(f"kind must be 'outer' or 'inner', got {self.kind!r}")
        if not (0.0 <= self.tau < 1.0):
            raise ValueError("tau must lie in [0, 1)")
        if not (self.eps > 0 and self.eps_prime > 0):
            raise ValueError("eps and eps' must be positive")
        lo, hi = self.interval
        if not lo < hi:
            raise ValueError(f"empty interval ({lo}, {hi})")

    @property
    def interval(self) -> tuple[float, float]:
        if self.kind == "outer":
            return 1.0 + self.eps, 1.0 / self.eps_prime
        return self.eps_prime, 1.0 - self.eps


@dataclass(frozen=True)
class MinResult:
    """Infimum of f over the open interval and where it is approached.

    ``branch`` names the closed form that applies ("F1", "F2", "G1", "G2") or
    "numeric" when no closed-form branch applies. ``flags`` records unmet
    preconditions; the value is always the true infimum.
    """

    value: float
    argmin: float
    branch: str
    flags: tuple[str, ...] = field(default=())


def _true_infimum(q: float, tau: float, lo: float, hi: float) -> tuple[float, float]:
    """Exact infimum over (lo, hi): endpoints and interior stationary points."""
    cands = [lo, hi]
    for x in stationary_points(q, tau).values():
        if x is not None and lo < x < hi:
            cands.append(x)
    vals = [f_value(x, q, tau) for x in cands]
    k = int(np.argmin(vals))
    return vals[k], cands[k]


def F1_closed(q: float, eps: float, tau: float) -> float:
    y = 1.0 + eps
    return (y * y * (1.0 - tau) - q * y + 1.0) ** 2 / y**3


def F1_closed_delta(delta: float, eps: float, tau: float) -> float:
    """F1 at q = 2 + delta in the expanded numerator form."""
    return (eps**2 - delta * (1 + eps) - tau * (1 + eps) ** 2) ** 2 / (1 + eps) ** 3


def F2_closed(q: float, eps_prime: float, tau: float) -> float:
    e = eps_prime
    return ((1.0 - tau) - q * e + e * e) ** 2 / e


def G1_closed(q: float, eps: float, tau: float) -> float:
    """f(1 - eps)."""
    return f_value(1.0 - eps, q, tau)


def G1_printed(delta: float, eps: float, tau: float) -> float:
    """The (1 + eps)-numerator expression for G1 as printed; differs from f(1 - eps)."""
    return (eps**2 - delta * (1 + eps) - tau * (1 + eps) ** 2) ** 2 / (1 - eps) ** 3


def G1_expanded(delta: float, eps: float, tau: float) -> float:
    """f(1 - eps) at q = 2 + delta, expanded: numerator uses (1 - eps)."""
    return (eps**2 - delta * (1 - eps) - tau * (1 - eps) ** 2) ** 2 / (1 - eps) ** 3


def G2_closed(q: float, eps_prime: float, tau: float) -> float:
    e = eps_prime
    return (e * e * (1.0 - tau) - q * e + 1.0) ** 2 / e**3


def min_f_outer(p: MinimizationParams) -> MinResult:
    if p.kind != "outer":
        raise ValueError("min_f_outer needs kind='outer'")
    lo, hi = p.interval
    sp = stationary_points(p.q, p.tau)
    x2 = sp["x2"]
    flags = []
    if x2 is None:
        flags.append("complex-stationary-points")
    value, arg = _true_infimum(p.q, p.tau, lo, hi)
    if x2 is not None and x2 < lo:
        if not p.q > 2.0 - p.tau:
            flags.append("lemma-precondition-unmet")
        return MinResult(F1_closed(p.q, p.eps, p.tau), lo, "F1", tuple(flags))
    if x2 is not None and hi < x2:
        # f decreases on (x4, x2); lo > 1 > x4 needs q > 2 + tau
        if not p.q > 2.0 + p.tau:
            flags.append("lemma-precondition-unmet")
            if lo < sp["x4"] and f_value(lo, p.q, p.tau) < f_value(hi, p.q, p.tau):
                return MinResult(value, arg, "numeric", tuple(flags))
        return MinResult(F2_closed(p.q, p.eps_prime, p.tau), hi, "F2", tuple(flags))
    flags.append("lemma-precondition-unmet")
    return MinResult(value, arg, "numeric", tuple(flags))


def min_f_inner(p: MinimizationParams) -> MinResult:
    """Infimum over (eps', 1 - eps).

    The G2 branch (argmin eps' when x1 < eps') additionally needs the interval
    to stop before the local maximum x4; otherwise f turns down again and the
    infimum may sit at 1 - eps. That case is flagged "side-condition-insufficient"
    and the true infimum is returned.
    """
    if p.kind != "inner":
        raise ValueError("min_f_inner needs kind='inner'")
    lo, hi = p.interval
    sp = stationary_points(p.q, p.tau)
    x1, x4 = sp["x1"], sp["x4"]
    flags = []
    if x1 is None:
        flags.append("complex-stationary-points")
    value, arg = _true_infimum(p.q, p.tau, lo, hi)
    precond = p.q > 2.0 + p.tau
    if x1 is not None and hi < x1:
        if not precond:
            flags.append("lemma-precondition-unmet")
        return MinResult(G1_closed(p.q, p.eps, p.tau), hi, "G1", tuple(flags))
    if x1 is not None and x1 < lo:
        if not precond:
            flags.append("lemma-precondition-unmet")
        if hi > x4 and f_value(hi, p.q, p.tau) < f_value(lo, p.q, p.tau):
            flags.append("side-condition-insufficient")
            return MinResult(value, arg, "numeric", tuple(flags))
        return MinResult(G2_closed(p.q, p.eps_prime, p.tau), lo, "G2", tuple(flags))
    flags.append("lemma-precondition-unmet")
    return MinResult(value, arg, "numeric", tuple(flags))


def min_f_bruteforce(q: float, tau: float, lo: float, hi: float, n_pts: int = GRID_POINTS) -> tuple[float, float]:
    """Independent oracle: uniform grid on [lo, hi] then bounded Brent refinement."""
    v, x = kernels.f_grid(float(q), float(tau), float(lo), float(hi), n_pts)
    h = (hi - lo) / (n_pts - 1)
    a, b = max(lo, x - h), min(hi, x + h)
    res = minimize_scalar(
        lambda t: f_value(t, q, tau), bounds=(a, b), method="bounded", options={"xatol": 1e-15}
    )
    if res.fun < v:
        return float(res.fun), float(res.x)
    return v, x


def closed_form_conditions(p: MinimizationParams) -> dict[str, bool]:
    """Which closed-form branch's stated hypotheses hold for ``p``."""
    sp = stationary_points(p.q, p.tau)
    lo, hi = p.interval
    x1, x2, x4 = sp["x1"], sp["x2"], sp["x4"]
    if p.kind == "outer":
        return {
            "F1": x2 is not None and p.q > 2 - p.tau and x2 < lo,
            "F2": x2 is not None and p.q > 2 + p.tau and hi < x2,
        }
    return {
        "G1": x1 is not None and p.q > 2 + p.tau and hi < x1,
        "G2": x1 is not None and p.q > 2 + p.tau and x1 < lo,
        "G2_complete": x1 is not None and p.q > 2 + p.tau and x1 < lo and hi <= x4,
    }


# --------------------------------------------------------------------------
# threshold conditions on eps guaranteeing gamma stays above 2 + delta
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdReport:
    eps0_outer: float
    outer_formula: bool
    outer_grid: bool
    outer_inf: float
    eps0_inner: float
    inner_formula: bool
    inner_grid: bool
    inner_inf: float


def eps0_outer(delta: float, tau: float) -> float:
    return ((2 * tau + delta) + math.sqrt(4 * delta + delta * delta + 4 * tau)) / (2 * (1 - tau))


def eps0_inner(delta: float, tau: float) -> float:
    return (-(2 * tau + delta) + math.sqrt(delta * delta + 4 * delta + 4 * tau)) / (2 * (1 - tau))


def gamma_threshold_checks(eps: float, delta: float, tau: float, n_pts: int = GRID_POINTS) -> ThresholdReport:
    """Formula thresholds on eps, each cross-checked by sampling gamma on a grid.

    Outer: inf over x > 1 + eps of gamma(x) > 2 + delta.
    Inner: inf over 0 < x < 1 - eps of gamma(x) > 2 + delta.
    """
    if not (eps > 0 and delta >= 0 and 0 <= tau < 1):
        raise ValueError("need eps > 0, delta >= 0, tau in [0, 1)")
    c = 1.0 - tau
    e_out = eps0_outer(delta, tau)
    outer_formula = eps > 1 / math.sqrt(c) - 1 and eps > e_out
    # gamma grows linearly at infinity; a log grid up to 1e6 covers the infimum
    xs = (1.0 + eps) * np.exp(np.linspace(0.0, math.log(1e6), n_pts))
    outer_inf = float(np.min(xs * c + 1.0 / xs))
    e_in = eps0_inner(delta, tau)
    inner_formula = eps > e_in
    if eps < 1:
        xi = np.linspace(0.0, 1.0 - eps, n_pts)[1:]
        inner_inf = float(np.min(xi * c + 1.0 / xi))
    else:
        inner_inf = math.inf
    return ThresholdReport(
        e_out, outer_formula, outer_inf > 2 + delta, outer_inf,
        e_in, inner_formula, inner_inf > 2 + delta, inner_inf,
    )  # fmt: skip


# --------------------------------------------------------------------------
# asymptotic ratios along the schedules
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioRow:
    param: float
    ratio: float

    @property
    def deviation(self) -> float:
        return abs(self.ratio - 1.0)


def small_eps_ratios(chi_list) -> dict[str, list[RatioRow]]:
    """F1/eps^4 and G1/eps^4 with eps = 2 chi^(-1/8), delta = chi^(-3/8), tau = chi^(-1/2)."""
    f1, g1 = [], []
    for chi in chi_list:
        eps = 2.0 * chi ** (-1 / 8)
        delta = chi ** (-3 / 8)
        tau = chi ** (-1 / 2)
        q = 2.0 + delta
        f1.append(RatioRow(chi, F1_closed(q, eps, tau) / eps**4))
        g1.append(RatioRow(chi, G1_closed(q, eps, tau) / eps**4))
    return {"F1": f1, "G1": g1}


def large_rho_ratios(rho_list, kappa: float = 0.3, h: float = 0.5) -> dict[str, list[RatioRow]]:
    """F2/(sqrt(rho)(h-kappa)^2) and G2/(rho^(3/2)(1-h)(h-kappa)^2), with
    q = sqrt(rho)(1-kappa), 1/eps' = sqrt(rho)(1-h), tau = 1/rho."""
    f2, g2 = [], []
    for rho in rho_list:
        q = math.sqrt(rho) * (1 - kappa)
        epsp = 1.0 / (math.sqrt(rho) * (1 - h))
        tau = 1.0 / rho
        f2.append(RatioRow(rho, F2_closed(q, epsp, tau) / (math.sqrt(rho) * (h - kappa) ** 2)))
        g2.append(RatioRow(rho, G2_closed(q, epsp, tau) / (rho**1.5 * (1 - h) * (h - kappa) ** 2)))
    return {"F2": f2, "G2": g2}


def asymptotic_ratio_suite(chi_list, rho_list=(1e4, 1e6), kappa: float = 0.3, h: float = 0.5) -> dict[str, list[RatioRow]]:
    chi_list = list(chi_list)
    if any(b <= a for a, b in zip(chi_list, chi_list[1:])):
        raise ValueError("chi_list must be increasing")
    out = small_eps_ratios(chi_list)
    out.update(large_rho_ratios(rho_list, kappa, h))
    return out


def strictly_decreasing_deviation(rows: list[RatioRow]) -> bool:
    d = [r.deviation for r in rows]
    return all(b < a for a, b in zip(d, d[1:]))


def gamma_on_ellipse_residual(r: float, tau: float, phi: float) -> float:
    e = gamma_ellipse(r, tau)
    w = gamma(r * complex(math.cos(phi), math.sin(phi)), tau)
    return abs((w.real / e.a) ** 2 + (w.imag / e.b) ** 2 - 1.0)
