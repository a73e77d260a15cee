"""Single table of numerical slacks used by every inequality and identity check.

Checks read their slack from ``TOL`` (or from an explicit override mapping) so
that the verify suite can inject faults by zeroing an entry.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Mapping


@dataclass(frozen=True)
class Tolerances:
    # matrix-shape contracts
    symmetry_rel: float = 1e-12
    sym_eig_real_rel: float = 1e-10

    # zeta evaluation routes
    route_agreement_rel: float = 1e-9
    det_identity_rel: float = 1e-8

    # pole bookkeeping
    pairing: float = 1e-8
    pole_modulus: float = 1e-8
    pole_residual: float = 1e-6
    unit_disk: float = 1e-8
    realness: float = 1e-8
    near_boundary: float = 1e-12
    # nonzero W eigenvalues have modulus >= 1 when they come from a 2-core
    w_zero_threshold: float = 0.5
    # defective double roots split by ~sqrt(machine eps); clusters this tight are averaged
    root_cluster: float = 1e-6

    # spectral inequalities (relative to the relevant operator norm)
    inequality_rel: float = 1e-10
    sigma_reduction: float = 1e-9
    quadratic_dichotomy: float = 1e-10

    # geometry
    ellipse_abs: float = 1e-6
    ellipse_continuity: float = 1e-10
    ellipse_param: float = 1e-12
    minimization_rel: float = 1e-8

    def with_overrides(self, overrides: Mapping[str, float] | None) -> "Tolerances":
        if not overrides:
            return self
        known = {f.name for f in fields(self)}
        bad = set(overrides) - known
        if bad:
            raise KeyError(f"unknown tolerance(s): {sorted(bad)}")
        return replace(self, **dict(overrides))


TOL = Tolerances()
