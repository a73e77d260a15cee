import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from izeta import geometry as geo
from izeta.spectra import gamma


@pytest.mark.parametrize("x, expected", [(0.0, 1.0), (2.0, 0.0), (1.75, 0.25)], ids=["centre", "vertex", "past-x0"])
def test_ellipse_distance_examples(x, expected):
    # 1.75 value frozen from a 50-digit brute-force angular scan
    assert geo.ellipse_distance(geo.Ellipse(2.0, 1.0), x) == pytest.approx(expected, abs=1e-15)


def test_ellipse_bruteforce_example():
    assert geo.ellipse_distance_bruteforce(geo.Ellipse(2.0, 1.0), 1.75) == pytest.approx(0.25, abs=1e-9)


def test_ellipse_x0():
    assert geo.Ellipse(2.0, 1.0).x0 == 1.5


@pytest.mark.parametrize("x", [-0.1, 2.0001])
def test_ellipse_distance_rejects_outside(x):
    with pytest.raises(ValueError):
        geo.ellipse_distance(geo.Ellipse(2.0, 1.0), x)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (1.0, 2.0), (1.0, 0.0)])
def test_ellipse_invariants(a, b):
    with pytest.raises(ValueError):
        geo.Ellipse(a, b)


def _ellipses():
    return st.tuples(st.floats(0.1, 10.0), st.floats(0.01, 0.99), st.floats(0.0, 1.0)).map(
        lambda t: (geo.Ellipse(t[0], t[0] * t[1]), t[0] * t[2])
    )


@given(_ellipses())
def test_ellipse_distance_matches_bruteforce(ex):
    e, x = ex
    assert abs(geo.ellipse_distance(e, x) - geo.ellipse_distance_bruteforce(e, x)) <= 1e-6


@given(st.floats(0.1, 10.0), st.floats(0.01, 0.99))
def test_ellipse_continuous_and_nonincreasing(a, frac):
    e = geo.Ellipse(a, a * frac)
    x0 = e.x0
    upper = math.sqrt(max(e.b**2 * (1 - x0 * x0 / (e.a**2 - e.b**2)), 0.0))
    assert abs(upper - (e.a - x0)) <= 1e-10 * max(1.0, a)
    d = [geo.ellipse_distance(e, x) for x in np.linspace(0, a, 301)]
    assert all(q <= p + 1e-12 for p, q in zip(d, d[1:]))


def test_ellipse_contact_switches_at_x0():
    # below x0 the nearest angle is interior, above it is the vertex
    e = geo.Ellipse(2.0, 1.0)
    from izeta import kernels

    _, th_below = kernels.ellipse_grid(e.a, e.b, 1.2, 100_001)
    _, th_above = kernels.ellipse_grid(e.a, e.b, 1.8, 100_001)
    assert th_below > 0.1 and th_above == 0.0


def test_gamma_ellipse_axes():
    e = geo.gamma_ellipse(2.0, 0.0)
    assert (e.a, e.b) == (2.5, 1.5)


def test_gamma_ellipse_point():
    r = 1.5
    assert geo.gamma_on_ellipse_residual(r, 0.0, math.pi / 3) <= 1e-12


@pytest.mark.parametrize("r, tau", [(1.0, 0.0), (1 / math.sqrt(0.75), 0.25)])
def test_gamma_ellipse_degenerate(r, tau):
    with pytest.raises(geo.DegenerateEllipseError, match="collapses"):
        geo.gamma_ellipse(r, tau)


@given(st.floats(0.2, 5.0), st.floats(0.0, 0.9), st.floats(0, 2 * math.pi))
def test_gamma_on_ellipse(r, tau, phi):
    assume(abs(r * (1 - tau) - 1 / r) > 1e-3)
    assert geo.gamma_on_ellipse_residual(r, tau, phi) <= 1e-12


@pytest.mark.parametrize(
    "r, tau, delta",
    [(1.5, 0.0, 0.1), (2.0, 0.05, 0.3), (0.5, 0.01, 0.2), (3.0, 0.1, 0.5)],
)
def test_gap_to_segment(r, tau, delta):
    e = geo.gamma_ellipse(r, tau)
    lam_max = 2 + delta
    assert e.x0 < lam_max <= e.a
    grid = geo.min_distance_to_gamma_circle_sq(r, tau, lam_max)
    assert grid == pytest.approx(geo.gamma_circle_gap_sq(r, tau, delta), abs=1e-8)


# ---------------------------------------------------------------- minimization


# values frozen from a 50-digit grid + golden-section oracle
@pytest.mark.parametrize(
    "q, eps, epsp, tau, kind, value, argmin, branch",
    [
        (2.05, 0.3, 0.2, 0.0, "outer", 0.00028447883477469276, 1.3, "F1"),
        (70.0, 0.3, 0.02, 1e-4, "outer", 7.9880045, 50.0, "F2"),
        (2.05, 0.3, 0.1, 0.0, "inner", 0.008819241982507289, 0.7, "G1"),
    ],
    ids=["F1", "F2-large-rho", "G1"],
)
def test_min_f_examples(q, eps, epsp, tau, kind, value, argmin, branch):
    p = geo.MinimizationParams(q, eps, epsp, tau, kind)
    res = (geo.min_f_outer if kind == "outer" else geo.min_f_inner)(p)
    assert res.value == pytest.approx(value, rel=1e-12)
    assert res.argmin == pytest.approx(argmin, rel=1e-15)
    assert res.branch == branch and res.flags == ()


@pytest.mark.parametrize(
    "lo, hi, kind, value",
    [(1.5, 4.0, "outer", 0.018518518518518517), (0.1, 0.7, "inner", 0.023615160349854227)],
    ids=["outer", "inner"],
)
def test_min_f_double_root_case(lo, hi, kind, value):
    # tau = 0, q = 2: f = (x - 1)^4 / x^3, monotone on each side of 1
    p = geo.MinimizationParams(2.0, lo - 1 if kind == "outer" else 1 - hi, 1 / hi if kind == "outer" else lo, 0.0, kind)
    res = (geo.min_f_outer if kind == "outer" else geo.min_f_inner)(p)
    assert res.value == pytest.approx(value, rel=1e-12)
    assert "lemma-precondition-unmet" in res.flags


def test_stationary_points_example():
    sp = geo.stationary_points(2.05, 0.0)
    assert sp["x1"] == pytest.approx(0.8) and sp["x2"] == pytest.approx(1.25)


def test_min_f_interior_minimum_flagged():
    p = geo.MinimizationParams(2.5, 0.1, 0.2, 0.0, "outer")  # x2 = 2 inside (1.1, 5)
    res = geo.min_f_outer(p)
    assert res.branch == "numeric" and "lemma-precondition-unmet" in res.flags
    assert res.value == pytest.approx(0.0, abs=1e-15) and res.argmin == pytest.approx(2.0)


def test_min_f_complex_stationary_points_flagged():
    p = geo.MinimizationParams(1.0, 0.1, 0.2, 0.0, "outer")
    res = geo.min_f_outer(p)
    assert "complex-stationary-points" in res.flags
    oracle, _ = geo.min_f_bruteforce(1.0, 0.0, *p.interval)
    assert res.value == pytest.approx(oracle, rel=1e-8)


def test_g2_side_condition_insufficient():
    # x1 < eps' holds but 1 - eps lies past the local maximum x4
    p = geo.MinimizationParams(10.0, 0.3, 0.2, 0.01, "inner")
    sp = geo.stationary_points(10.0, 0.01)
    assert sp["x1"] < 0.2 and 0.7 > sp["x4"]
    assert geo.f_value(0.2, 10.0, 0.01) == pytest.approx(115.3, abs=0.1)
    assert geo.f_value(0.7, 10.0, 0.01) == pytest.approx(88.7, abs=0.1)
    res = geo.min_f_inner(p)
    assert "side-condition-insufficient" in res.flags
    assert res.argmin == pytest.approx(0.7) and res.value < geo.G2_closed(10.0, 0.2, 0.01)
    oracle, _ = geo.min_f_bruteforce(10.0, 0.01, 0.2, 0.7)
    assert res.value == pytest.approx(oracle, rel=1e-8)


def test_printed_g1_numerator_differs_from_direct():
    delta, eps, tau = 0.05, 0.3, 0.01
    direct = geo.G1_closed(2 + delta, eps, tau)
    assert geo.G1_expanded(delta, eps, tau) == pytest.approx(direct, rel=1e-13)
    assert abs(geo.G1_printed(delta, eps, tau) - direct) > 1e-3 * direct


def test_printed_g1_agrees_when_delta_and_tau_vanish():
    assert geo.G1_printed(0.0, 0.3, 0.0) == pytest.approx(geo.G1_closed(2.0, 0.3, 0.0), rel=1e-14)


@given(st.floats(0.0, 0.5), st.floats(0.01, 2.0), st.floats(0.0, 0.2))
def test_f1_expanded_form(delta, eps, tau):
    assert geo.F1_closed_delta(delta, eps, tau) == pytest.approx(geo.F1_closed(2 + delta, eps, tau), rel=1e-10, abs=1e-300)


@given(st.floats(0.01, 5.0), st.floats(0.1, 60.0), st.floats(0.0, 0.5))
def test_f2_equals_f_at_right_end(epsp, q, tau):
    assert geo.F2_closed(q, epsp, tau) == pytest.approx(geo.f_value(1 / epsp, q, tau), rel=1e-10)


@pytest.mark.parametrize("eps, epsp, kind", [(0.3, 0.9, "outer"), (0.3, 0.8, "inner")])
def test_params_reject_empty_interval(eps, epsp, kind):
    with pytest.raises(ValueError):
        geo.MinimizationParams(2.05, eps, epsp, 0.0, kind)


@pytest.mark.parametrize("tau", [-0.1, 1.0])
def test_params_reject_tau(tau):
    with pytest.raises(ValueError):
        geo.MinimizationParams(3.0, 0.1, 0.1, tau, "outer")


def _fprime_sign_changes(q, tau, lo, hi, n=200_001):
    x = np.linspace(lo, hi, n)
    c = 1 - tau
    fp = (x * x * c - q * x + 1) * (x * x * c + q * x - 3)
    s = np.sign(fp)
    s = s[s != 0]
    return int(np.count_nonzero(np.diff(s)))


@given(st.floats(0.0, 0.5), st.floats(0.01, 20.0))
def test_single_stationary_point_above_one(tau, extra):
    q = 2 + tau + extra
    x2 = geo.stationary_points(q, tau)["x2"]
    assert geo.stationary_points(q, tau)["x4"] < 1
    assert _fprime_sign_changes(q, tau, 1.0, 4 * x2) == 1


def test_two_stationary_points_above_one_below_threshold():
    # q > 2 sqrt(1 - tau) but q < 2 + tau: the local maximum x4 also exceeds 1
    tau, q = 0.1, 2.0
    sp = geo.stationary_points(q, tau)
    assert q > 2 * math.sqrt(1 - tau)
    assert sp["x4"] == pytest.approx(1.026, abs=1e-3) and sp["x2"] == pytest.approx(1.462, abs=1e-3)
    assert _fprime_sign_changes(q, tau, 1.0, 3.0) == 2


@given(st.floats(0.0, 0.05), st.floats(0.05, 5.0), st.floats(0.01, 0.9), st.floats(0.01, 0.9), st.booleans())
def test_min_f_matches_oracle_everywhere(tau, d, a, b, outer):
    q = 2 + tau + d
    if outer:
        lo = 1 + 3 * a
        hi = lo * (1 + 5 * b)
        p = geo.MinimizationParams(q, lo - 1, 1 / hi, tau, "outer")
        res = geo.min_f_outer(p)
    else:
        lo = 0.5 * a
        hi = lo + (1 - lo) * b
        p = geo.MinimizationParams(q, 1 - hi, lo, tau, "inner")
        res = geo.min_f_inner(p)
    oracle, _ = geo.min_f_bruteforce(q, tau, *p.interval, n_pts=100_001)
    assert res.value <= oracle * (1 + 1e-12) + 1e-300
    assert abs(res.value - oracle) <= 1e-8 * max(oracle, 1.0)


# ---------------------------------------------------------------- thresholds


@pytest.mark.parametrize("eps", [0.01, 0.5, 2.0])
def test_thresholds_am_gm(eps):
    rep = geo.gamma_threshold_checks(eps, 0.0, 0.0, n_pts=100_001)
    assert rep.eps0_outer == 0.0 and rep.outer_formula and rep.outer_grid


def test_thresholds_example():
    rep = geo.gamma_threshold_checks(0.1, 0.02, 1e-4)
    assert rep.outer_formula == rep.outer_grid == False  # noqa: E712
    assert rep.eps0_outer == pytest.approx(0.1522, abs=1e-4)


def test_thresholds_below_eps0_confirmed_by_grid():
    delta, tau = 0.1, 0.01
    e0 = geo.eps0_outer(delta, tau)
    rep = geo.gamma_threshold_checks(0.5 * e0, delta, tau)
    assert not rep.outer_formula and rep.outer_inf <= 2 + delta
    e1 = geo.eps0_inner(delta, tau)
    rep = geo.gamma_threshold_checks(0.5 * e1, delta, tau)
    assert not rep.inner_formula and rep.inner_inf <= 2 + delta


@given(st.floats(0.001, 0.95), st.floats(0.0, 0.5), st.floats(0.0, 0.1))
def test_thresholds_formula_is_exact(eps, delta, tau):
    # away from the threshold itself the formula and the grid agree
    e0, e1 = geo.eps0_outer(delta, tau), geo.eps0_inner(delta, tau)
    assume(abs(eps - e0) > 1e-3 and abs(eps - e1) > 1e-3 and abs(eps - (1 / math.sqrt(1 - tau) - 1)) > 1e-3)
    rep = geo.gamma_threshold_checks(eps, delta, tau, n_pts=200_001)
    assert rep.outer_formula == rep.outer_grid
    assert rep.inner_formula == rep.inner_grid


def test_thresholds_reject_bad_input():
    with pytest.raises(ValueError):
        geo.gamma_threshold_checks(0.0, 0.1, 0.0)


def test_gamma_helper_matches_spectra():
    assert geo.f_value(1.7, 2.3, 0.05) == pytest.approx(abs(gamma(1.7, 0.05) - 2.3) ** 2 / 1.7)


# ---------------------------------------------------------------- asymptotics


def test_small_eps_ratios_trend():
    out = geo.asymptotic_ratio_suite([1e4, 1e6, 1e8])
    assert geo.strictly_decreasing_deviation(out["F1"])
    assert geo.strictly_decreasing_deviation(out["G1"])


def test_large_rho_ratios():
    out = geo.large_rho_ratios([1e4, 1e6], kappa=0.3, h=0.5)
    assert geo.strictly_decreasing_deviation(out["G2"])
    # F2 / (sqrt(rho)(h - kappa)^2) tends to 1/(1 - h), not 1
    assert [r.ratio for r in out["F2"]] == pytest.approx([1.997, 1.99997], abs=1e-3)


def test_ratio_suite_rejects_unsorted():
    with pytest.raises(ValueError):
        geo.asymptotic_ratio_suite([1e6, 1e4])
