import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from izeta.errors import NumericalError
from izeta.graphs import ErdosRenyiSpec, Graph, complete_graph, cycle_graph, path_graph, petersen_graph, sample_erdos_renyi
from izeta.spectra import (
    NormalizedMatrices,
    build_H,
    gamma,
    interlacing_check,
    neg_v_H_rhs,
    nonsym_eigenvalues,
    operator_norm,
    singular_values,
    sym_eigenvalues,
    weyl_eigen_gap_real_v,
    weyl_H_singular,
    weyl_singular_gap,
)
from izeta.zeta import inverse_zeta_bass, non_backtracking_matrix

from strategies import graphs


@pytest.mark.parametrize(
    "M, expected",
    [
        (complete_graph(4).adjacency, [3, -1, -1, -1]),
        (np.zeros((3, 3)), [0, 0, 0]),
        (petersen_graph().adjacency, [3] + [1] * 5 + [-2] * 4),
    ],
    ids=["K4", "zero", "petersen"],
)
def test_sym_eigenvalues(M, expected):
    s = sym_eigenvalues(M)
    assert s.symmetric
    np.testing.assert_allclose(s.values, expected, atol=1e-12)


def test_petersen_spectrum_oracle():
    # A^2 + A - 2I = J: eigenvalues other than 3 satisfy x^2 + x - 2 = 0
    A = petersen_graph().adjacency
    np.testing.assert_array_equal(A @ A + A - 2 * np.eye(10), np.ones((10, 10)))


def test_sym_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigs_reject_nonsquare():
    with pytest.raises(ValueError):
        nonsym_eigenvalues(np.zeros((2, 3)))


def test_nonsym_identity_and_rotation():
    np.testing.assert_allclose(nonsym_eigenvalues(np.eye(3)).values, [1, 1, 1])
    rot = nonsym_eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]])).values
    np.testing.assert_allclose(np.sort_complex(rot), [-1j, 1j], atol=1e-15)


def test_nonsym_wraps_solver_failure():
    with pytest.raises(NumericalError):
        nonsym_eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_triangle_w_spectrum():
    mu = nonsym_eigenvalues(non_backtracking_matrix(cycle_graph(3)).dense()).values
    roots = np.exp(2j * np.pi * np.arange(3) / 3)
    expected = np.sort_complex(np.concatenate([roots, roots]))
    np.testing.assert_allclose(np.sort_complex(mu), expected, atol=1e-7)
    np.testing.assert_allclose(mu**3, np.ones(6), atol=1e-12)


@pytest.mark.parametrize(
    "M, expected",
    [(np.diag([2.0, -3.0]), [2, 3]), (np.array([[0, 1j], [1j, 0]]), [1, 1])],
    ids=["diag", "unitary"],
)
def test_singular_values(M, expected):
    np.testing.assert_allclose(singular_values(M), expected)


def test_operator_norm():
    assert operator_norm(np.diag([1.0, -4.0, 2.0])) == pytest.approx(4.0)


def test_gamma():
    assert gamma(2.0, 0.0) == 2.5
    assert gamma(1j, 0.5) == pytest.approx(0.5j - 1j)
    with pytest.raises(ValueError):
        gamma(0, 0.1)


@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3), st.floats(0, 0.99))
def test_gamma_conjugation(v, tau):
    assert gamma(v.conjugate(), tau) == pytest.approx(gamma(v, tau).conjugate())


def _er(n, rho, seed):
    return sample_erdos_renyi(ErdosRenyiSpec(n, rho, seed))


def test_normalized_matrices_identities():
    g = _er(30, 5.0, 3)
    nm = NormalizedMatrices(g, 5.0)
    t = math.sqrt(5.0) / 30
    np.testing.assert_allclose(nm.A_tilde - nm.A_breve, t * (np.ones((30, 30)) - np.eye(30)), atol=1e-15)
    assert nm.delta_max == pytest.approx(np.max(np.abs(g.degrees / 5.0 - 29 / 30)))
    assert nm.tau == pytest.approx(1 / 30 + 1 / 5)
    assert not nm.degenerate


@pytest.mark.parametrize("n", [3, 6, 11])
def test_delta_max_complete_graph_is_zero(n):
    nm = NormalizedMatrices(complete_graph(n), float(n))
    assert nm.delta_max == 0.0
    assert nm.degenerate


def test_H_determinant_identity():
    g = _er(25, 4.0, 9)
    nm = NormalizedMatrices(g, 4.0)
    v = 0.7 + 0.2j
    a = np.linalg.det(-v * build_H(nm, v))
    b = np.linalg.det(neg_v_H_rhs(nm, v))
    assert abs(a - b) <= 1e-10 * abs(b)


def test_H_conjugation():
    nm = NormalizedMatrices(petersen_graph(), 3.0)
    v = 0.4 - 1.1j
    np.testing.assert_allclose(build_H(nm, v.conjugate()), build_H(nm, v).conj(), atol=0)
    np.testing.assert_allclose(singular_values(build_H(nm, v)), singular_values(build_H(nm, v.conjugate())), rtol=1e-12)


def test_H_empty_graph_is_diagonal():
    n, rho, v = 5, 2.0, 0.6 + 0.3j
    nm = NormalizedMatrices(Graph(n, ()), rho)
    H = build_H(nm, v)
    tau = 1 / n + 1 / rho
    expected = -(v * (1 - tau) + 1 / v - v * (n - 1) / n)
    np.testing.assert_allclose(H, expected * np.eye(n), atol=1e-15)


def test_H_rejects_zero():
    with pytest.raises(ValueError):
        build_H(NormalizedMatrices(cycle_graph(4), 2.0), 0)


@given(st.integers(0, 200), st.complex_numbers(min_magnitude=0.1, max_magnitude=1.5))
def test_det_identity_with_zeta(seed, v):
    # det(-v H(v)) = (1/zeta)(v / sqrt rho) / (1 - v^2/rho)^(r-1)
    rho = 4.0
    g = _er(12, rho, seed)
    nm = NormalizedMatrices(g, rho)
    u = v / math.sqrt(rho)
    r = g.m - g.n + 1
    lhs = np.linalg.det(-v * build_H(nm, v))
    rhs = inverse_zeta_bass(g, u) / (1 - u * u) ** (r - 1)
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


@given(st.integers(0, 200), st.floats(0.05, 5.0))
def test_sigma_reduction_real_v(seed, v):
    nm = NormalizedMatrices(_er(15, 4.0, seed), 4.0)
    gam = nm.gamma(v).real
    s = singular_values(nm.A_tilde - gam * np.eye(15))
    np.testing.assert_allclose(np.sort(np.abs(nm.lambda_tilde - gam)), s, atol=1e-9)


def test_sigma_reduction_without_degree_term():
    # B^ = 0 (K_n with rho = n): sigma_i(H) = |l_i(A~) - gamma|
    nm = NormalizedMatrices(complete_graph(6), 6.0)
    v = 0.8 + 0.5j
    s = singular_values(build_H(nm, v))
    np.testing.assert_allclose(np.sort(np.abs(nm.lambda_tilde - nm.gamma(v))), s, atol=1e-12)


def test_weyl_zero_perturbation():
    X = np.random.default_rng(0).normal(size=(6, 6))
    res = weyl_singular_gap(X, np.zeros((6, 6)))
    assert res.gap == 0 and res.bound == 0 and res.holds()


def test_weyl_small_shift():
    X = np.random.default_rng(1).normal(size=(8, 8))
    X = X + X.T
    res = weyl_singular_gap(X, 0.01 * np.eye(8))
    assert res.bound == pytest.approx(0.01) and res.holds()


def test_weyl_dimension_mismatch():
    with pytest.raises(ValueError):
        weyl_singular_gap(np.eye(2), np.eye(3))


@pytest.mark.parametrize("v", [0.3 + 0.2j, 1.5, -0.8j, 2.5 - 1j])
def test_weyl_H_singular(v):
    nm = NormalizedMatrices(_er(80, 10.0, 5), 10.0)
    assert weyl_H_singular(nm, v).holds()


@pytest.mark.parametrize("v", [0.2, 1.5, 3.0])
def test_weyl_hermitian(v):
    nm = NormalizedMatrices(_er(80, 10.0, 6), 10.0)
    res = weyl_eigen_gap_real_v(nm, v)
    assert res.holds()


def test_weyl_hermitian_diagonal_only_graph():
    # no edges: A~ = 0 and H is diagonal, so the gap equals |v| max |B^_ii| exactly
    nm = NormalizedMatrices(Graph(4, ()), 2.0)
    res = weyl_eigen_gap_real_v(nm, 1.5)
    assert res.gap == pytest.approx(res.bound)


def test_weyl_hermitian_rejects_complex():
    with pytest.raises(ValueError):
        weyl_eigen_gap_real_v(NormalizedMatrices(cycle_graph(4), 2.0), 1 + 1j)


@pytest.mark.parametrize(
    "g, rho, variant, upper, lower",
    [
        (complete_graph(5), 5.0, "rank_one", True, True),
        (path_graph(2), 1.0, "rank_one", True, True),
        (complete_graph(5), 5.0, "centered", True, False),
        (path_graph(2), 1.0, "centered", True, False),
    ],
    ids=["K5-rank-one", "edge-rank-one", "K5-centered", "edge-centered"],
)
def test_interlacing_closed_form_cases(g, rho, variant, upper, lower):
    # K5, rho=5: A(breve) = 0 while l_min(A~) = -1/sqrt5.
    # single edge, rho=1: A(breve) has eigenvalues +-1/2, A~ has +-1.
    res = interlacing_check(g, rho, variant)
    assert (res.upper, res.lower) == (upper, lower)


@pytest.mark.parametrize("seed", range(10))
def test_interlacing_rank_one_on_samples(seed):
    assert interlacing_check(_er(120, 20.0, seed), 20.0, "rank_one").both


@pytest.mark.parametrize("seed", range(10))
def test_interlacing_centered_links(seed):
    # upper link holds; the lower link can miss by at most the diagonal shift t
    rho = 20.0
    res = interlacing_check(_er(120, rho, seed), rho, "centered")
    assert res.upper
    assert res.lower_margin >= -math.sqrt(rho) / 120 - 1e-12


def test_interlacing_rejects_bad_rho():
    with pytest.raises(ValueError):
        interlacing_check(cycle_graph(4), 5.0)
    with pytest.raises(ValueError):
        interlacing_check(cycle_graph(4), 2.0, "other")


@given(graphs(min_n=2, max_n=9))
def test_spectrum_sorted_and_real(g):
    lam = sym_eigenvalues(g.adjacency).values
    assert lam.dtype.kind == "f" and np.all(np.diff(lam) <= 0)
    assert lam.shape == (g.n,)
