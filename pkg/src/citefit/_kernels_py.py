"""NumPy implementations of the hot numerical kernels.

Used when the compiled extension (``citefit._kernels``) is unavailable or
when ``CITEFIT_PURE_PYTHON`` is set.  Both backends implement the same two
functions and must agree to close to machine precision; the test suite and
``benchmarks/bench_kernels.py`` compare them directly.
"""

import numpy as np
from scipy.special import erfc

BACKEND = "python"

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def scaled_power_sum(alpha: float, b: float, start: int, stop: int) -> float:
    """Sum of ((b + x) / (b + 1))**(-alpha) for integer x in [start, stop].

    The (b + 1)**alpha scaling keeps the terms in a safe floating range for
    any alpha > 1, b > 0 (the x = 1 term is exactly 1).
    """
    x = np.arange(start, stop + 1, dtype=np.float64)
    log_ratio = np.log(b + x) - np.log(b + 1.0)
    return float(np.exp(-alpha * log_ratio).sum())


def normal_interval_masses(z_lo: np.ndarray, z_hi: np.ndarray) -> np.ndarray:
    """Phi(z_hi) - Phi(z_lo) for standard-normal Phi, elementwise.

    Intervals on the right half-axis are differenced through upper-tail
    erfc values and mirrored otherwise, which preserves relative accuracy
    deep in both tails (needed for tail pmf values feeding KS statistics
    and log-likelihoods).
    """
    z_lo = np.asarray(z_lo, dtype=np.float64)
    z_hi = np.asarray(z_hi, dtype=np.float64)
    right = (z_lo + z_hi) > 0.0
    a = np.where(right, z_lo, -z_hi)
    c = np.where(right, z_hi, -z_lo)
    out = 0.5 * (erfc(a * _INV_SQRT2) - erfc(c * _INV_SQRT2))
    return np.maximum(out, 0.0)
