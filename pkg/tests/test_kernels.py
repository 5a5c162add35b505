"""Backend kernels: accuracy against high-precision references and
compiled/pure parity."""

import importlib

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from citefit import _kernels_py

mp.mp.dps = 50


def _compiled():
    try:
        return importlib.import_module("citefit._kernels")
    except ImportError:
        return None


POWER_CASES = [
    (2.0, 1.0, 1, 1000),
    (1.5, 0.25, 1, 5000),
    (5.76, 89.8, 1, 2000),
    (14.74, 329.5, 1, 1000),
    (1.001, 0.1, 1, 3000),
    (3.0, 1e7, 1, 1000),
]


@pytest.mark.parametrize("alpha,b,start,stop", POWER_CASES)
def test_scaled_power_sum_matches_mpmath(alpha, b, start, stop):
    got = _kernels_py.scaled_power_sum(alpha, b, start, stop)
    a, bb = mp.mpf(alpha), mp.mpf(b)
    exact = mp.fsum(((bb + x) / (bb + 1)) ** (-a) for x in range(start, stop + 1))
    assert abs(got - float(exact)) <= 1e-12 * float(exact)


def _exact_mass(z_lo, z_hi):
    # difference on the thin-tail side avoids cancellation in the oracle
    q = lambda z: 0.5 * mp.erfc(mp.mpf(z) / mp.sqrt(2))
    if z_lo + z_hi > 0:
        return float(q(z_lo) - q(z_hi))
    return float(q(-z_hi) - q(-z_lo))


def test_normal_interval_masses_matches_mpmath():
    z_lo = np.array([-1.0, 0.3, 5.0, -8.0, 20.0, -36.0, -0.2])
    z_hi = np.array([1.0, 0.9, 6.0, -7.0, 21.0, -35.0, 0.2])
    got = _kernels_py.normal_interval_masses(z_lo, z_hi)
    exact = np.array([_exact_mass(l, h) for l, h in zip(z_lo, z_hi)])
    assert_allclose(got, exact, rtol=1e-12)


def test_normal_interval_masses_deep_tail_relative_accuracy():
    # masses near 1e-200 must keep relative accuracy, not just absolute
    got = float(_kernels_py.normal_interval_masses(np.array([30.0]),
                                                   np.array([30.5]))[0])
    exact = _exact_mass(30.0, 30.5)
    assert exact > 0
    assert abs(got - exact) <= 1e-10 * exact


def test_normal_interval_masses_never_negative():
    rng = np.random.default_rng(0)
    z = np.sort(rng.normal(size=(100, 2)) * 10, axis=1)
    out = _kernels_py.normal_interval_masses(z[:, 0], z[:, 1])
    assert np.all(out >= 0.0)


@pytest.mark.skipif(_compiled() is None, reason="compiled kernels unavailable")
class TestBackendParity:
    def test_power_sum_parity(self):
        compiled = _compiled()
        for alpha, b, start, stop in POWER_CASES:
            a = compiled.scaled_power_sum(alpha, b, start, stop)
            p = _kernels_py.scaled_power_sum(alpha, b, start, stop)
            assert abs(a - p) <= 1e-13 * abs(p)

    def test_masses_parity(self):
        compiled = _compiled()
        rng = np.random.default_rng(1)
        z = np.sort(rng.normal(size=(500, 2)) * 8, axis=1)
        a = compiled.normal_interval_masses(z[:, 0].copy(), z[:, 1].copy())
        p = _kernels_py.normal_interval_masses(z[:, 0], z[:, 1])
        assert_allclose(a, p, rtol=1e-13, atol=0.0)

    def test_backend_names(self):
        assert _compiled().BACKEND == "cython"
        assert _kernels_py.BACKEND == "python"
