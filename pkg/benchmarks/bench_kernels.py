#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the two hot kernels (power-term summation for the hooked
normaliser, normal interval masses for the lognormal pmf) and one
end-to-end hooked maximum-likelihood fit on each backend.

Run:  python benchmarks/bench_kernels.py
"""

import importlib
import sys
import time

import numpy as np


def _load_backends():
    backends = {}
    try:
        backends["cython"] = importlib.import_module("citefit._kernels")
    except ImportError:
        print("compiled extension not available; benchmarking fallback only")
    backends["python"] = importlib.import_module("citefit._kernels_py")
    return backends


def _time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(backends):
    order = [n for n in ("python", "cython") if n in backends]
    rows = []
    for stop in (10_000, 100_000, 1_000_000):
        for name in order:
            mod = backends[name]
            t = _time(lambda: mod.scaled_power_sum(3.94, 67.9, 1, stop))
            rows.append((f"scaled_power_sum[{stop:>9,}]", name, t))
    rng = np.random.default_rng(0)
    for size in (1_000, 100_000):
        z = np.sort(rng.normal(size=(size, 2)) * 4, axis=1)
        z_lo, z_hi = z[:, 0].copy(), z[:, 1].copy()
        for name in order:
            mod = backends[name]
            t = _time(lambda: mod.normal_interval_masses(z_lo, z_hi))
            rows.append((f"normal_masses[{size:>9,}]", name, t))
    return rows


def bench_fit():
    # end-to-end: hooked fit timing under whichever backend is selected
    from citefit import CitationSample, HookedPowerLaw, fit
    from citefit.kernels import BACKEND

    data = CitationSample(HookedPowerLaw(3.94, 67.9).sample(10_000, 1))
    t = _time(lambda: fit("hooked", data), repeat=3)
    return BACKEND, t


def main():
    backends = _load_backends()
    print(f"{'kernel':<32} {'backend':<8} {'best time':>12}")
    baselines = {}
    for kernel, backend, t in bench_kernels(backends):
        note = ""
        if backend == "python":
            baselines[kernel] = t
        elif kernel in baselines:
            note = f"  ({baselines[kernel] / t:.1f}x vs python)" if t else ""
        print(f"{kernel:<32} {backend:<8} {t * 1e3:>10.3f} ms{note}")

    backend, t = bench_fit()
    print(f"\nhooked MLE fit, n=10,000 counts, backend={backend}: {t * 1e3:.1f} ms")
    print("set CITEFIT_PURE_PYTHON=1 to repeat on the fallback")


if __name__ == "__main__":
    sys.exit(main())
