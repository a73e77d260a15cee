"""Pole localization, Ramanujan criteria and Monte Carlo event estimation."""

from .criteria import GTRHReport, gtrh_check_regular, quadratic_roots, root_dichotomy
from .domains import (
    DomainSpec,
    delta_schedule,
    domain_event,
    domains_for,
    eps_hat_schedule,
    eps_prime_schedule,
    eps_schedule,
)
from .montecarlo import (
    EVENTS,
    AggregateRow,
    TrialOutcome,
    aggregate,
    campaign_estimate,
    decay_trend_ok,
    partial_sums,
    recompute_flags,
    run_trial,
    trial_seed,
    wilson_interval,
)
from .poles import (
    PoleSet,
    companion_matrix,
    ihara_bass_expected_w_spectrum,
    multisets_match,
    normalized_pole_set,
    poles_auto,
    poles_via_W,
    poles_via_companion,
    w_eigenvalues,
)
