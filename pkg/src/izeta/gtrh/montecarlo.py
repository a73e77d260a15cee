"""Seeded Monte Carlo estimation of pole-domain events over G(n, rho/n)."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import IzetaError
from ..graphs import ErdosRenyiSpec, Graph, sample_erdos_renyi
from ..spectra import NormalizedMatrices
from .domains import DomainSpec, delta_schedule, domain_event, domains_for
from .poles import PoleSet, poles_via_companion

Z95 = 1.959963984540054

EVENTS = ("phi1", "phi2", "phi_union", "phi_hat1", "phi_hat2", "U_violation", "Psi_violation")
PROBE_RADII = (0.5, 1.0, 2.0)
PROBE_WIDTH = 0.05


@dataclass
class TrialOutcome:
    """Per-sample record; every flag is recomputable from the archived graph."""

    seed: int
    n: int
    rho: float
    chi: float
    kappa: float
    delta: float
    eps: float
    eps_prime: float
    eps_hat: float
    degenerate: bool = False
    attempts: int = 1
    lambda1: float = math.nan
    lambda2: float = math.nan
    lambda_max_breve: float = math.nan
    delta_max: float = math.nan
    pole_in_D1: bool = False
    pole_in_D2: bool = False
    pole_in_I1: bool = False
    pole_in_I2: bool = False
    guard_U: bool = False
    guard_Psi: bool = False
    empty_domains: list = field(default_factory=list)
    near_boundary: int = 0
    probe_hits: list = field(default_factory=list)
    error: str | None = None
    graph_file: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def event(self, name: str) -> bool:
        if name == "phi1":
            return self.pole_in_D1
        if name == "phi2":
            return self.pole_in_D2
        if name == "phi_union":
            return self.pole_in_D1 or self.pole_in_D2
        if name == "phi_hat1":
            return self.pole_in_I1
        if name == "phi_hat2":
            return self.pole_in_I2
        if name == "U_violation":
            return not self.guard_U
        if name == "Psi_violation":
            return not self.guard_Psi
        raise KeyError(name)


def wilson_interval(k: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n <= 0:
        return 0.0, 1.0
    p = k / n
    z2 = z * z
    denom = 1.0 + z2 / n
    centre = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    lo = 0.0 if k == 0 else max(0.0, centre - half)
    hi = 1.0 if k == n else min(1.0, centre + half)
    return lo, hi


def evaluate_graph(
    g: Graph,
    rho: float,
    chi: float,
    kappa: float,
    delta: float,
    h_hat: float,
    poles: PoleSet | None = None,
) -> dict:
    """Spectral statistics and event flags of one sampled graph."""
    nm = NormalizedMatrices(g, rho)
    lam = nm.lambda_tilde
    lam_b = nm.lambda_breve
    ps = (poles or poles_via_companion(g)).with_rho(rho)
    doms = domains_for(chi, rho, kappa, h_hat)
    v = ps.all_v()
    mod = np.abs(v)
    probe = [bool(np.any(np.abs(mod - R) < PROBE_WIDTH)) for R in PROBE_RADII]
    return dict(
        lambda1=float(lam[0]),
        lambda2=float(lam[1]) if lam.shape[0] > 1 else math.nan,
        lambda_max_breve=float(lam_b[0]),
        delta_max=nm.delta_max,
        pole_in_D1=domain_event(ps, doms["D1"]),
        pole_in_D2=domain_event(ps, doms["D2"]),
        pole_in_I1=domain_event(ps, doms["I1"]),
        pole_in_I2=domain_event(ps, doms["I2"]),
        guard_U=bool(lam_b[0] <= 2.0 + delta),
        guard_Psi=bool(lam[0] >= math.sqrt(rho) * (1.0 - kappa)),
        empty_domains=[k for k, d in doms.items() if d.empty],
        near_boundary=sum(d.near_boundary(v) for d in doms.values() if not d.empty),
        probe_hits=probe,
    )


def run_trial(
    spec: ErdosRenyiSpec,
    kappa: float = 0.5,
    delta: float | None = None,
    h_hat: float = 4.0,
    max_resamples: int = 10,
    graph_hook: Callable[[ErdosRenyiSpec, int], Graph] | None = None,
) -> tuple[TrialOutcome, Graph | None]:
    """One sample, resampled under derived sub-seeds while min degree < 2.

    ``graph_hook(spec, attempt)`` replaces the sampler (test hook).
    """
    n, rho = spec.n, spec.rho
    chi = rho / math.log(n)
    if delta is None:
        delta = delta_schedule(chi)
    doms = domains_for(chi, rho, kappa, h_hat)
    out = TrialOutcome(
        seed=int(spec.seed),
        n=n,
        rho=float(rho),
        chi=float(chi),
        kappa=float(kappa),
        delta=float(delta),
        eps=doms["D1"].eps,
        eps_prime=doms["D1"].eps_prime,
        eps_hat=float(doms["I1"].eps_hat),
    )
    draw = graph_hook or sample_erdos_renyi
    g = None
    for attempt in range(max_resamples + 1):
        g = draw(spec, attempt)
        out.attempts = attempt + 1
        if g.n and g.degrees.min() >= 2:
            break
    else:
        out.degenerate = True
        out.empty_domains = [k for k, d in doms.items() if d.empty]
        return out, g
    try:
        stats = evaluate_graph(g, rho, chi, kappa, delta, h_hat)
    except IzetaError as exc:
        out.error = f"{type(exc).__name__}: {exc}"
        out.degenerate = True
        return out, g
    for k, val in stats.items():
        setattr(out, k, val)
    return out, g


def recompute_flags(record: dict, g: Graph, h_hat: float) -> dict:
    """Event flags of an archived trial, recomputed from its graph file."""
    stats = evaluate_graph(
        g, record["rho"], record["chi"], record["kappa"], record["delta"], h_hat
    )
    keys = ("pole_in_D1", "pole_in_D2", "pole_in_I1", "pole_in_I2", "guard_U", "guard_Psi")
    return {k: stats[k] for k in keys}


def trial_seed(seed_root: int, n: int, index: int) -> int:
    """64-bit trial seed from (seed_root, n, index) via numpy SeedSequence."""
    ss = np.random.SeedSequence([int(seed_root) & ((1 << 64) - 1), int(n), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class AggregateRow:
    n: int
    chi: float
    rho: float
    event: str
    p_hat: float
    wilson_lo: float
    wilson_hi: float
    trials: int
    degenerate_count: int


def aggregate(outcomes: Sequence[TrialOutcome], events: Iterable[str] = EVENTS) -> list[AggregateRow]:
    """Per-n empirical probabilities over non-degenerate trials."""
    by_n: dict[int, list[TrialOutcome]] = {}
    for o in outcomes:
        by_n.setdefault(o.n, []).append(o)
    rows = []
    for n in sorted(by_n):
        group = by_n[n]
        good = [o for o in group if not o.degenerate]
        deg = len(group) - len(good)
        for ev in events:
            k = sum(o.event(ev) for o in good)
            lo, hi = wilson_interval(k, len(good))
            p = k / len(good) if good else math.nan
            rows.append(AggregateRow(n, group[0].chi, group[0].rho, ev, p, lo, hi, len(good), deg))
    return rows


def partial_sums(rows: Sequence[AggregateRow], event: str) -> list[tuple[int, float]]:
    total = 0.0
    out = []
    for r in rows:
        if r.event == event:
            total += r.p_hat
            out.append((r.n, total))
    return out


def decay_trend_ok(rows: Sequence[AggregateRow], event: str, max_inversions: int = 1) -> tuple[bool, int]:
    """Non-increasing p_hat in n, tolerating inversions whose intervals overlap.

    Returns (ok, number of inversions). An inversion whose Wilson intervals do
    not overlap fails immediately.
    """
    pts = [r for r in rows if r.event == event]
    inv = 0
    for a, b in zip(pts, pts[1:]):
        if b.p_hat > a.p_hat:
            inv += 1
            if b.wilson_lo > a.wilson_hi:
                return False, inv
    return inv <= max_inversions, inv


def campaign_estimate(
    schedule: Sequence[tuple[int, float, int]],
    kappa: float = 0.5,
    delta_rule: Callable[[float], float] = delta_schedule,
    seed_root: int = 0,
    h_hat: float = 4.0,
    max_resamples: int = 10,
    progress: Callable[[str], None] | None = None,
) -> tuple[list[TrialOutcome], list[AggregateRow]]:
    """Run every (n, chi, trials) point sequentially; see ``harness.campaign`` for
    the parallel, archiving runner."""
    check_schedule(schedule)
    if any(t < 30 for _, _, t in schedule):
        warnings.warn("fewer than 30 trials per point: Wilson intervals are unreliable", stacklevel=2)
    outcomes = []
    for n, chi, trials in schedule:
        rho = chi * math.log(n)
        for i in range(trials):
            spec = ErdosRenyiSpec(n, rho, trial_seed(seed_root, n, i))
            o, _ = run_trial(spec, kappa, delta_rule(chi), h_hat, max_resamples)
            outcomes.append(o)
        if progress:
            progress(f"n={n}: {trials} trials done")
    return outcomes, aggregate(outcomes)


def check_schedule(schedule: Sequence[tuple[int, float, int]]) -> None:
    ns = [int(p[0]) for p in schedule]
    if not ns:
        raise ValueError("empty schedule")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError(f"schedule n values must be strictly increasing, got {ns}")
    for n, chi, trials in schedule:
        if trials < 1:
            raise ValueError(f"trials must be >= 1 at n={n}")
        rho = chi * math.log(n)
        if not (0 < rho < n):
            raise ValueError(f"rho = chi log n = {rho:.6g} is outside (0, n) at n={n}")
