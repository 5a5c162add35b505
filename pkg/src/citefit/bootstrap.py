"""Bootstrap resampling engine with order-statistic confidence intervals.

A study evaluates a statistic on ``reps`` independent resamples drawn with
replacement from a source sample. The 95% interval is taken from the
order statistics of the replicate values: with k = ceil(0.025 * reps) the
bounds are the k-th smallest and k-th largest values, which reduces to the
25th smallest / 25th largest for the canonical 1000-rep study. Replicates
whose statistic raises a citefit error are excluded from the order
statistics but reported in ``n_failed`` (bounds become NaN if fewer than k
successes remain on a side).

Per-replicate seeds derive from (master seed, replicate index), so results
are identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from citefit.exceptions import (
    AllStatisticsFailedError,
    CitefitError,
    DomainError,
    TooFewRepsError,
)
from citefit.sample import CitationSample, as_sample
from citefit.seeding import spawn_rng

MIN_REPS = 40   # keeps k = ceil(0.025 * reps) >= 1


@dataclass(frozen=True)
class StudySummary:
    """Median and order-statistic 95% interval of a bootstrapped statistic."""

    statistic_name: str
    median: float
    lo95: float
    hi95: float
    reps: int
    n_failed: int = 0
    raw: tuple[float, ...] | None = None


def resample(sample, size: int, seed: int) -> CitationSample:
    """``size`` draws with replacement from the sample's multiset."""
    sample = as_sample(sample)
    sample.require_nonempty()
    if size < 1:
        raise DomainError("resample size must be >= 1")
    return _resample_with(sample, size, spawn_rng(seed))


def _resample_with(sample: CitationSample, size: int,
                   rng: np.random.Generator) -> CitationSample:
    idx = rng.integers(0, len(sample), size=size)
    return CitationSample(sample.counts[idx], sample.offset_applied, sample.label)


def order_stat_bounds(raw_sorted: np.ndarray, reps: int) -> tuple[float, float]:
    """k-th smallest / k-th largest with k = ceil(0.025 * reps).

    ``raw_sorted`` holds the successful replicate values; NaN bounds are
    reported when failures left fewer than 2k values, the situation the
    canonical studies mark as not-available.
    """
    k = math.ceil(0.025 * reps)
    if len(raw_sorted) < 2 * k:
        return (math.nan, math.nan)
    return (float(raw_sorted[k - 1]), float(raw_sorted[len(raw_sorted) - k]))


def _run_rep(args):
    sample, size, seed, rep, statistic = args
    boot = _resample_with(sample, size, spawn_rng(seed, rep))
    try:
        value = float(statistic(boot))
    except CitefitError:
        return math.nan
    return value if math.isfinite(value) else math.nan


def bootstrap_study(sample, reps: int, statistic, size: int | None = None,
                    seed: int = 0, statistic_name: str = "statistic",
                    workers: int = 1, keep_raw: bool = False) -> StudySummary:
    """Bootstrap ``statistic`` over ``reps`` resamples.

    Parameters
    ----------
    statistic : callable
        Maps a :class:`CitationSample` to a float. Must be a picklable
        module-level callable when ``workers > 1``. Raising a
        :class:`~citefit.exceptions.CitefitError` marks the replicate
        failed.
    size : int or None
        Resample size; None keeps the source sample size.
    """
    sample = as_sample(sample)
    sample.require_nonempty()
    if reps < MIN_REPS:
        raise TooFewRepsError(f"need reps >= {MIN_REPS}, got {reps}")
    size = len(sample) if size is None else int(size)
    if size < 1:
        raise DomainError("resample size must be >= 1")

    tasks = [(sample, size, seed, rep, statistic) for rep in range(reps)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_run_rep, tasks, chunksize=max(1, reps // (4 * workers))))
    else:
        values = [_run_rep(t) for t in tasks]

    arr = np.asarray(values, dtype=np.float64)
    good = np.sort(arr[~np.isnan(arr)])
    n_failed = int(np.isnan(arr).sum())
    if good.size == 0:
        raise AllStatisticsFailedError(
            f"all {reps} replicates failed for {statistic_name!r}"
        )
    lo, hi = order_stat_bounds(good, reps)
    return StudySummary(
        statistic_name=statistic_name,
        median=float(np.median(good)),
        lo95=lo,
        hi95=hi,
        reps=reps,
        n_failed=n_failed,
        raw=tuple(float(v) for v in arr) if keep_raw else None,
    )
