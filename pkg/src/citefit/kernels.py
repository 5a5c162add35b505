"""Backend selection for the numerical kernels.

Prefers the compiled extension and falls back to the NumPy implementation.
Set ``CITEFIT_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and the backend-parity tests).
"""

import os

if os.environ.get("CITEFIT_PURE_PYTHON"):
    from citefit import _kernels_py as _impl
else:
    try:
        from citefit import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from citefit import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
scaled_power_sum = _impl.scaled_power_sum
normal_interval_masses = _impl.normal_interval_masses
