"""The compiled and pure-Python kernels must agree bit for bit."""
import numpy as np
import pytest

from chaoslab._backend import get_kernels
from conftest import BACKENDS

pytestmark = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")

PRM_B = (0.525, 0.2, 0.3, 0.005, 100.0, 100.0)
Y0 = (10.0, 10.0, 101.0, -0.2, 101.0)


@pytest.fixture
def both():
    return get_kernels("cython"), get_kernels("python")


def test_rk4_step_identical(both):
    c, p = both
    assert c.rk4_step(Y0, PRM_B, 0.1) == p.rk4_step(Y0, PRM_B, 0.1)


@pytest.mark.parametrize("stride", [1, 7, 10])
def test_rk4_run_identical_through_blowup(both, stride):
    c, p = both
    rc, dc, bc = c.rk4_run(Y0, PRM_B, 0.01, 20000, stride)
    rp, dp, bp = p.rk4_run(Y0, PRM_B, 0.01, 20000, stride)
    assert (dc, bc) == (dp, bp)
    assert np.array_equal(rc, rp)


@pytest.mark.parametrize("tol", [1e-6, 1e-10])
def test_dopri_identical(both, tol):
    c, p = both
    out_c = c.dopri_run(Y0, PRM_B, 0.0, 25.0, tol, tol, 1e-3, 1e-12, 3, 10**6)
    out_p = p.dopri_run(Y0, PRM_B, 0.0, 25.0, tol, tol, 1e-3, 1e-12, 3, 10**6)
    assert np.array_equal(out_c[0], out_p[0])
    assert np.array_equal(out_c[1], out_p[1])
    assert out_c[2:] == out_p[2:]


@pytest.mark.parametrize("n, m, seed", [(10, 1, 0), (3000, 3, 5), (2000, 5, 2 ** 63)])
def test_ba_identical(both, n, m, seed):
    c, p = both
    assert np.array_equal(c.ba_edges(n, m, np.random.SFC64(seed)),
                          p.ba_edges(n, m, np.random.SFC64(seed)))


@pytest.mark.parametrize("n, prob, seed", [(50000, 1e-4, 1), (300, 0.3, 9), (2, 0.5, 4)])
def test_er_identical(both, n, prob, seed):
    c, p = both
    assert np.array_equal(c.er_edges(n, prob, np.random.SFC64(seed)),
                          p.er_edges(n, prob, np.random.SFC64(seed)))
