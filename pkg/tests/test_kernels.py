import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from izeta import kernels
from izeta.graphs import complete_graph, petersen_graph

from strategies import graphs

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@given(graphs(max_n=9, max_m=20))
def test_nb_triplets_parity(g):
    if g.m == 0:
        return
    args = g.directed
    r1, c1 = kernels.nb_triplets_nb(*args)
    r2, c2 = kernels.nb_triplets_np(*args)
    np.testing.assert_array_equal(r1, r2)
    np.testing.assert_array_equal(c1, c2)


@needs_numba
@pytest.mark.parametrize("g", [complete_graph(5), petersen_graph()], ids=["K5", "petersen"])
def test_closed_walk_parity(g):
    args = g.directed
    np.testing.assert_array_equal(
        kernels.closed_walk_counts_nb(*args, 8), kernels.closed_walk_counts_np(*args, 8)
    )


@needs_numba
@given(st.floats(0.1, 10), st.floats(0.05, 0.95), st.floats(0, 1))
def test_ellipse_grid_parity(a, frac, xf):
    v1, t1 = kernels.ellipse_grid_nb(a, a * frac, a * xf, 10_001)
    v2, t2 = kernels.ellipse_grid_np(a, a * frac, a * xf, 10_001)
    assert v1 == pytest.approx(v2, rel=1e-12, abs=1e-15)


@needs_numba
@given(st.floats(1.0, 10), st.floats(0, 0.5), st.floats(0.05, 1), st.floats(0.1, 5))
def test_f_grid_parity(q, tau, lo, width):
    v1, x1 = kernels.f_grid_nb(q, tau, lo, lo + width, 10_001)
    v2, x2 = kernels.f_grid_np(q, tau, lo, lo + width, 10_001)
    assert v1 == pytest.approx(v2, rel=1e-9, abs=1e-15)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, IZETA_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from izeta import kernels; print(kernels.BACKEND, kernels.f_grid is kernels.f_grid_np)"],
        env=env, capture_output=True, text=True, check=True,
    )  # fmt: skip
    assert out.stdout.split() == ["numpy", "True"]


def test_active_backend():
    assert kernels.BACKEND == ("numba" if kernels.USE_NUMBA else "numpy")
