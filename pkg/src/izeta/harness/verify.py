"""Property suite over all modules, with named failures and reproduction seeds.

Each check takes the tolerance set, so setting one tolerance to zero is a
quick way to confirm the check can fail.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import geometry as geo
from ..graphs import ErdosRenyiSpec, Graph, circular_ladder, sample_erdos_renyi
from ..gtrh.criteria import gtrh_check_regular, root_dichotomy
from ..gtrh.poles import ihara_bass_expected_w_spectrum, multisets_match, w_eigenvalues
from ..spectra import (
    NormalizedMatrices,
    build_H,
    interlacing_check,
    neg_v_H_rhs,
    weyl_eigen_gap_real_v,
    weyl_H_singular,
)
from ..suites import deterministic_suite, random_regular_suite, random_small_suite
from ..tolerances import TOL, Tolerances
from ..zeta import inverse_zeta_bass, inverse_zeta_edge, log_zeta_series, non_backtracking_matrix

VERIFY_SEED = 7


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seed: int | None = None

    def line(self) -> str:
        s = f" seed={self.seed}" if self.seed is not None else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{s}: {self.detail}"


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


# ----------------------------------------------------------------------------
# sample generators shared with the acceptance run
# ----------------------------------------------------------------------------


def zeta_sample_points(g: Graph, count: int, seed: int, frac: float = 0.9) -> list[complex]:
    """Points u with |u| <= frac / r_W, uniform in the disk."""
    r_w = non_backtracking_matrix(g).spectral_radius
    rng = _rng(seed)
    rad = frac / r_w * np.sqrt(rng.uniform(0, 1, count))
    ang = rng.uniform(0, 2 * math.pi, count)
    return [complex(x) for x in rad * np.exp(1j * ang)]


def zeta_route_errors(g: Graph, u: complex, K: int = 400) -> tuple[float, float, float]:
    """(|bass - edge| / scale, |series - bass|, allowed series error).

    The allowance is the series' reported truncation plus rounding bound,
    plus the determinant routes' own disagreement as their error estimate.
    """
    b = inverse_zeta_bass(g, u)
    e = inverse_zeta_edge(g, u)
    scale = max(abs(b), abs(e), 1.0)
    s = log_zeta_series(g, u, K)
    eps = float(np.finfo(float).eps)
    allowed = abs(b) * math.expm1(s.total_bound) + abs(b - e) + 4 * eps * abs(b) if s.total_bound < 700 else math.inf
    return abs(b - e) / scale, abs(s.inverse_zeta - b), allowed


def draw_min_params(rng: np.random.Generator, branch: str) -> geo.MinimizationParams:
    """Parameters satisfying the hypotheses of one closed-form branch.

    G2 draws use the complete condition x1 < eps' and 1 - eps <= x4.
    """
    for _ in range(10_000):
        tau = float(rng.uniform(0.0, 0.05))
        if branch in ("F1", "G1"):
            q = 2.0 + tau + float(rng.uniform(0.01, 0.5))
        elif branch == "F2":
            rho = float(rng.uniform(50.0, 1e4))
            q = math.sqrt(rho) * (1 - float(rng.uniform(0.1, 0.6)))
        else:
            q = 2.0 + tau + float(rng.uniform(0.2, 50.0))
        sp = geo.stationary_points(q, tau)
        x1, x2, x4 = sp["x1"], sp["x2"], sp["x4"]
        if branch == "F1":
            eps = (x2 - 1.0) + float(rng.uniform(0.01, 1.0))
            epsp = 1.0 / ((1 + eps) * float(rng.uniform(1.2, 5.0)))
            p = geo.MinimizationParams(q, eps, epsp, tau, "outer")
        elif branch == "F2":
            eps = float(rng.uniform(0.05, 0.5))
            hi = float(rng.uniform(0.3, 0.95)) * x2
            if hi <= 1 + eps:
                continue
            p = geo.MinimizationParams(q, eps, 1.0 / hi, tau, "outer")
        elif branch == "G1":
            hi = x1 * float(rng.uniform(0.3, 0.99))
            epsp = hi * float(rng.uniform(0.05, 0.9))
            p = geo.MinimizationParams(q, 1.0 - hi, epsp, tau, "inner")
        elif branch == "G2":
            epsp = x1 + float(rng.uniform(0.01, 0.9)) * (x4 - x1)
            hi = epsp + float(rng.uniform(0.05, 1.0)) * (x4 - epsp)
            p = geo.MinimizationParams(q, 1.0 - hi, epsp, tau, "inner")
        else:
            raise ValueError(branch)
        if geo.closed_form_conditions(p).get(branch if branch != "G2" else "G2_complete"):
            return p
    raise RuntimeError(f"no draw satisfied {branch}")


def draw_violating_params(rng: np.random.Generator) -> geo.MinimizationParams:
    """Parameters for which no closed-form branch's hypotheses hold."""
    while True:
        tau = float(rng.uniform(0.0, 0.05))
        q = 2.0 + tau + float(rng.uniform(0.05, 5.0))
        sp = geo.stationary_points(q, tau)
        if rng.uniform() < 0.5:
            x2 = sp["x2"]
            lo = 1 + float(rng.uniform(0.01, 0.95)) * (x2 - 1)
            hi = x2 * float(rng.uniform(1.05, 3.0))
            p = geo.MinimizationParams(q, lo - 1, 1 / hi, tau, "outer")
        else:
            x1 = sp["x1"]
            lo = x1 * float(rng.uniform(0.1, 0.95))
            hi = x1 + float(rng.uniform(0.05, 0.95)) * (1 - x1)
            p = geo.MinimizationParams(q, 1 - hi, lo, tau, "inner")
        if not any(geo.closed_form_conditions(p).values()):
            return p


def closed_form_value(p: geo.MinimizationParams, branch: str) -> float:
    if branch == "F1":
        return geo.F1_closed(p.q, p.eps, p.tau)
    if branch == "F2":
        return geo.F2_closed(p.q, p.eps_prime, p.tau)
    if branch == "G1":
        return geo.G1_closed(p.q, p.eps, p.tau)
    return geo.G2_closed(p.q, p.eps_prime, p.tau)


def sample_v_points(rng, rho: float, kappa: float = 0.5, eps: float = 0.2) -> dict[str, complex]:
    """One v in each of the annuli eps' < |v| < 1 - eps, 1 + eps < |v| < 1/eps'
    and the matching real intervals."""
    epsp = 1.0 / (math.sqrt(rho) * (1 - kappa))
    r1 = float(rng.uniform(epsp, 1 - eps))
    r2 = float(rng.uniform(1 + eps, 1 / epsp))
    return {
        "D1": r1 * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))),
        "D2": r2 * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))),
        "I1": complex(float(rng.uniform(epsp, 1 - eps))),
        "I2": complex(float(rng.uniform(1 + eps, 1 / epsp))),
    }


# ----------------------------------------------------------------------------
# checks
# ----------------------------------------------------------------------------


def check_zeta_routes(tol: Tolerances, full: bool) -> list[CheckResult]:
    graphs = deterministic_suite()
    if full:
        graphs.update(random_small_suite())
    out = []
    for k, (name, g) in enumerate(graphs.items()):
        seed = VERIFY_SEED * 1000 + k
        worst_be = 0.0
        series_ok = True
        for u in zeta_sample_points(g, 5 if not full else 20, seed):
            be, se, allowed = zeta_route_errors(g, u)
            worst_be = max(worst_be, be)
            series_ok &= se <= allowed
        ok = worst_be <= tol.route_agreement_rel and series_ok
        out.append(CheckResult(f"zeta_routes[{name}]", ok, f"max rel |bass-edge|={worst_be:.3e}, series within bound={series_ok}", seed))
    return out


def check_ihara_bass(tol: Tolerances, full: bool) -> list[CheckResult]:
    graphs = deterministic_suite()
    if full:
        graphs.update(random_small_suite())
    out = []
    for name, g in graphs.items():
        ok = multisets_match(w_eigenvalues(g, tol), ihara_bass_expected_w_spectrum(g, tol), tol.pairing)
        out.append(CheckResult(f"ihara_bass[{name}]", ok, f"2m={2 * g.m}"))
    return out


def check_gtrh(tol: Tolerances, full: bool) -> list[CheckResult]:
    graphs = {k: g for k, g in deterministic_suite().items() if g.degrees.min() == g.degrees.max() and g.degrees[0] >= 2}
    graphs["ladder20"] = circular_ladder(20)
    if full:
        graphs.update(random_regular_suite())
    out = []
    for name, g in graphs.items():
        rep = gtrh_check_regular(g, tol)
        out.append(CheckResult(
            f"gtrh_equivalence[{name}]", rep.agree,
            f"ramanujan={rep.ramanujan} pole_based={rep.pole_based} worst={rep.worst_eigenvalue!r}",
        ))  # fmt: skip
    return out


def check_root_dichotomy(tol: Tolerances, full: bool) -> list[CheckResult]:
    bad = []
    for q in (1, 2, 3, 4, 7):
        lim = 2 * math.sqrt(q)
        for lam in np.linspace(-1.5 * lim, 1.5 * lim, 401 if full else 101):
            within, on = root_dichotomy(float(lam), q, tol.quadratic_dichotomy)
            if within != on:
                bad.append((q, float(lam)))
    return [CheckResult("root_dichotomy", not bad, f"{len(bad)} disagreements" + (f", first {bad[0]}" if bad else ""))]


def _er(n: int, rho: float, seed: int) -> Graph:
    return sample_erdos_renyi(ErdosRenyiSpec(n, rho, seed))


def check_matrix_identity(tol: Tolerances, full: bool) -> list[CheckResult]:
    rng = _rng(VERIFY_SEED + 1)
    worst = 0.0
    for k in range(20 if full else 5):
        g = _er(40, 6.0, VERIFY_SEED + k)
        nm = NormalizedMatrices(g, 6.0)
        v = complex(rng.normal(), rng.normal())
        lhs = -v * build_H(nm, v)
        rhs = neg_v_H_rhs(nm, v)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs)))))
    return [CheckResult("neg_v_H_identity", worst <= tol.det_identity_rel, f"max rel err={worst:.3e}", VERIFY_SEED + 1)]


def check_interlacing(tol: Tolerances, full: bool) -> list[CheckResult]:
    """A~ - tJ is a rank-one perturbation, so both links hold; for the
    zero-diagonal centered matrix only the upper link is guaranteed."""
    n, rho, count = (200, 30.0, 100) if full else (60, 8.0, 10)
    fails = []
    for k in range(count):
        seed = VERIFY_SEED * 10_000 + k
        g = _er(n, rho, seed)
        r1 = interlacing_check(g, rho, "rank_one", tol)
        rc = interlacing_check(g, rho, "centered", tol)
        if not (r1.both and rc.upper):
            fails.append(seed)
    return [CheckResult("interlacing", not fails, f"{count - len(fails)}/{count} samples", fails[0] if fails else None)]


def check_weyl(tol: Tolerances, full: bool) -> list[CheckResult]:
    n, rho, count = (200, 30.0, 50) if full else (60, 8.0, 8)
    rng = _rng(VERIFY_SEED + 2)
    fs, fh = [], []
    for k in range(count):
        seed = VERIFY_SEED * 20_000 + k
        nm = NormalizedMatrices(_er(n, rho, seed), rho)
        vs = sample_v_points(rng, rho)
        for key, v in vs.items():
            if not weyl_H_singular(nm, v).holds(tol.inequality_rel):
                fs.append((seed, key))
            if key in ("I1", "I2") and not weyl_eigen_gap_real_v(nm, v.real).holds(tol.inequality_rel):
                fh.append((seed, key))
    return [
        CheckResult("weyl_singular", not fs, f"{4 * count - len(fs)}/{4 * count} pairs", fs[0][0] if fs else None),
        CheckResult("weyl_hermitian", not fh, f"{2 * count - len(fh)}/{2 * count} pairs", fh[0][0] if fh else None),
    ]


def check_ellipse(tol: Tolerances, full: bool) -> list[CheckResult]:
    rng = _rng(VERIFY_SEED + 3)
    worst, cont = 0.0, 0.0
    count = 100 if full else 10
    for _ in range(count):
        a = float(rng.uniform(0.1, 10.0))
        b = float(rng.uniform(0.01, 0.99)) * a
        x = float(rng.uniform(0.0, a))
        e = geo.Ellipse(a, b)
        worst = max(worst, abs(geo.ellipse_distance(e, x) - geo.ellipse_distance_bruteforce(e, x)))
        x0 = e.x0
        below = e.b**2 * (1 - x0 * x0 / (e.a**2 - e.b**2))
        cont = max(cont, abs(math.sqrt(max(below, 0.0)) - (e.a - x0)))
    worst_param = 0.0
    for _ in range(count):
        r = float(rng.uniform(0.2, 3.0))
        tau = float(rng.uniform(0.0, 0.5))
        try:
            worst_param = max(worst_param, geo.gamma_on_ellipse_residual(r, tau, float(rng.uniform(0, 2 * math.pi))))
        except geo.DegenerateEllipseError:
            pass
    return [
        CheckResult("ellipse_distance", worst <= tol.ellipse_abs, f"max abs err={worst:.3e}", VERIFY_SEED + 3),
        CheckResult("ellipse_continuity", cont <= tol.ellipse_continuity, f"max jump at x0={cont:.3e}"),
        CheckResult("gamma_ellipse", worst_param <= tol.ellipse_param, f"max residual={worst_param:.3e}"),
    ]


def check_minimization(tol: Tolerances, full: bool) -> list[CheckResult]:
    rng = _rng(VERIFY_SEED + 4)
    per = 13 if full else 3
    worst = 0.0
    for br in ("F1", "F2", "G1", "G2"):
        for _ in range(per):
            p = draw_min_params(rng, br)
            oracle, _ = geo.min_f_bruteforce(p.q, p.tau, *p.interval)
            got = closed_form_value(p, br)
            worst = max(worst, abs(got - oracle) / max(abs(oracle), 1e-300))
    flagged_ok = True
    for _ in range(10 if full else 3):
        p = draw_violating_params(rng)
        res = (geo.min_f_outer if p.kind == "outer" else geo.min_f_inner)(p)
        oracle, _ = geo.min_f_bruteforce(p.q, p.tau, *p.interval)
        flagged_ok &= "lemma-precondition-unmet" in res.flags
        # interior minima are zeros of f, so compare on the unit scale
        flagged_ok &= abs(res.value - oracle) <= tol.minimization_rel * max(abs(oracle), 1.0)
    return [
        CheckResult("min_f_closed_forms", worst <= tol.minimization_rel, f"max rel err={worst:.3e}", VERIFY_SEED + 4),
        CheckResult("min_f_flagged_path", flagged_ok, "flag raised and true infimum returned"),
    ]


def check_thresholds(tol: Tolerances, full: bool) -> list[CheckResult]:
    rng = _rng(VERIFY_SEED + 5)
    bad = 0
    count = 40 if full else 10
    for _ in range(count):
        eps = float(rng.uniform(0.01, 0.9))
        delta = float(rng.uniform(0.0, 0.3))
        tau = float(rng.uniform(0.0, 0.05))
        rep = geo.gamma_threshold_checks(eps, delta, tau, n_pts=200_000)
        # formula is sufficient, so formula => grid
        bad += (rep.outer_formula and not rep.outer_grid) + (rep.inner_formula and not rep.inner_grid)
    return [CheckResult("gamma_thresholds", bad == 0, f"{bad} implications failed", VERIFY_SEED + 5)]


CHECKS: dict[str, Callable[[Tolerances, bool], list[CheckResult]]] = {
    "zeta_routes": check_zeta_routes,
    "ihara_bass": check_ihara_bass,
    "gtrh": check_gtrh,
    "root_dichotomy": check_root_dichotomy,
    "matrix_identity": check_matrix_identity,
    "interlacing": check_interlacing,
    "weyl": check_weyl,
    "ellipse": check_ellipse,
    "minimization": check_minimization,
    "thresholds": check_thresholds,
}


def verify_suite(level: str = "fast", tol: Tolerances = TOL, only=None, progress=None) -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    full = level == "full"
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        res = fn(tol, full)
        out.extend(res)
        if progress:
            progress(f"[verify] {name}: {sum(r.passed for r in res)}/{len(res)} ({time.perf_counter() - t0:.1f}s)")
    return out
